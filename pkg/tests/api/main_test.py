"""
HTTP 接口测试
"""
import json
import os

from fastapi.testclient import TestClient

from app import __version__
from app.main import app


class TestApi:
    """FastAPI 接口测试"""

    def setup_method(self):
        self.client = TestClient(app)

    def test_health(self):
        response = self.client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "version": __version__}

    def test_examples(self):
        """测试按类别列出注册表名称"""
        # Act
        response = self.client.get("/api/examples")

        # Assert
        assert response.status_code == 200
        body = response.json()
        assert "c2" in body["hopf"]
        assert "eval-c2" in body["pairing"]

    def test_check_passes(self):
        """测试套件接口返回 JSON 报告"""
        # Act
        response = self.client.post("/api/check", json={"suite": "axioms", "target": "c2"})

        # Assert
        assert response.status_code == 200
        body = response.json()
        assert body["subject"] == "axioms:c2"
        assert body["overall"] is True
        assert [entry["check"] for entry in body["entries"]][0] == "associativity"

    def test_check_reports_failures(self):
        response = self.client.post("/api/check", json={"suite": "pams", "target": "mutant-iota-trivial-c3"})
        assert response.status_code == 200
        body = response.json()
        assert body["overall"] is False
        failed = [entry["check"] for entry in body["entries"] if not entry["passed"]]
        assert "2.coinvariants-image" in failed

    def test_unknown_suite_is_bad_request(self):
        response = self.client.post("/api/check", json={"suite": "everything", "target": "c2"})
        assert response.status_code == 400
        assert "Unknown suite" in response.json()["error"]

    def test_file_targets_are_not_resolved(self, documents_dir):
        """测试接口不按文件路径解析目标"""
        response = self.client.post(
            "/api/check", json={"suite": "pairing", "target": os.path.join(documents_dir, "eval-c2.json")}
        )
        assert response.status_code == 400

    def test_verify_document(self, documents_dir):
        """测试上传文档验证"""
        # Arrange
        with open(os.path.join(documents_dir, "sweedler4.json"), encoding="utf-8") as f:
            document = json.load(f)

        # Act
        response = self.client.post("/api/verify", json={"document": document})

        # Assert
        assert response.status_code == 200
        body = response.json()
        assert body["subject"] == "verify:hopf"
        assert body["overall"] is True

    def test_verify_invalid_document(self):
        response = self.client.post("/api/verify", json={"document": {"kind": "hopf", "name": "x"}})
        assert response.status_code == 400
        assert "error" in response.json()
