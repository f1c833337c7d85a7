"""
文档服务单元测试
"""
import json
import os

import numpy as np
import pytest

from app.core.exceptions import ParseError, UnknownExample, ValidationError
from app.dao.document_dao import DocumentDAO
from app.models.hopf import HopfAlgebraData
from app.models.modules import RepModule, YdModule
from app.models.pairing import HopfPairing
from app.services.document_service import DocumentService


class TestDocumentService:
    """文档与引擎对象之间的转换测试"""

    @pytest.fixture(autouse=True)
    def _services(self, suite_service):
        self.document_service = suite_service.document_service
        self.module_service = suite_service.module_service
        self.pairing_service = suite_service.pairing_service

    def _read(self, documents_dir, name):
        with open(os.path.join(documents_dir, name), encoding="utf-8") as f:
            return f.read()

    @pytest.mark.parametrize("filename,name", [("c2.json", "c2"), ("sweedler4.json", "sweedler4")])
    def test_shipped_hopf_documents_match_registry(self, registry, documents_dir, filename, name):
        """测试随附的 Hopf 代数文档与注册表中的结构相同"""
        # Act
        h = self.document_service.load(os.path.join(documents_dir, filename))

        # Assert
        assert isinstance(h, HopfAlgebraData)
        assert h.same_structure(registry.resolve(name))

    def test_shipped_pairing_document(self, registry, documents_dir):
        p = self.document_service.load(os.path.join(documents_dir, "eval-c2.json"))
        assert isinstance(p, HopfPairing)
        assert self.pairing_service.same_pairing(p, registry.resolve("eval-c2"))

    def test_wrong_tensor_length_is_located(self, documents_dir):
        """测试结构常数长度不符时报告 mult 所在行"""
        # Arrange
        data = json.loads(self._read(documents_dir, "c2.json"))
        data["mult"] = data["mult"][:-1]
        text = json.dumps(data, sort_keys=True, indent=2)
        expected_line = next(i for i, line in enumerate(text.splitlines(), 1) if '"mult"' in line)

        # Act
        with pytest.raises(ParseError) as info:
            self.document_service.parse_input(text)

        # Assert
        assert info.value.line == expected_line
        assert "mult has 7 entries, expected 8" in str(info.value)

    def test_invalid_structure_fails_validation(self, documents_dir):
        """测试对极错误的文档抛出 ValidationError"""
        # Arrange
        data = json.loads(self._read(documents_dir, "c2.json"))
        data["antipode"] = [1, 0, 0, 2]

        # Act & Assert
        with pytest.raises(ValidationError) as info:
            self.document_service.parse_input(json.dumps(data))
        assert info.value.report.failed_ids()

    def test_invalid_pairing_fails_validation(self, documents_dir):
        data = json.loads(self._read(documents_dir, "eval-c2.json"))
        data["form"] = [1, 0, 0, 2]
        with pytest.raises(ValidationError) as info:
            self.document_service.parse_input(json.dumps(data))
        assert "i-product" in info.value.report.failed_ids()

    def test_pairing_reference_must_be_hopf(self, documents_dir):
        data = json.loads(self._read(documents_dir, "eval-c2.json"))
        data["k"] = "eval-c2"
        with pytest.raises(UnknownExample):
            self.document_service.parse_input(json.dumps(data))

    @pytest.mark.parametrize("name", ["c3", "dual-s3", "sweedler4", "taft-3-7-2"])
    def test_hopf_round_trip(self, registry, name):
        """测试注册表 Hopf 代数经文档往返后结构不变"""
        # Arrange
        h = registry.resolve(name)

        # Act
        text = self.document_service.emit(h)
        back = self.document_service.parse_input(text)

        # Assert
        assert back.same_structure(h)
        assert back.name == name
        assert text == self.document_service.emit(back)

    def test_pairing_round_trip(self, registry):
        p = registry.resolve("sign-s3-c2")
        back = self.document_service.parse_input(self.document_service.emit(p))
        assert self.pairing_service.same_pairing(back, p)

    def test_yd_module_round_trip(self, registry):
        """测试 YD 模文档内嵌配对且往返后结构不变"""
        # Arrange
        v = self.module_service.yd_trivial(registry.resolve("eval-c2"))

        # Act
        back = self.document_service.parse_input(self.document_service.emit(v))

        # Assert
        assert isinstance(back, YdModule)
        assert back.label == "k"
        assert np.array_equal(back.action, v.action)
        assert np.array_equal(back.coaction, v.coaction)

    def test_rep_module_over_double(self, registry):
        """测试 rep-module 文档可以按 double:<配对> 引用量子偶"""
        # Arrange
        text = json.dumps({
            "kind": "rep-module", "label": "trivial", "algebra": "double:eval-c2",
            "dim": 1, "action": [1, 1, 0, 0],
        })

        # Act
        r = self.document_service.parse_input(text)

        # Assert
        assert isinstance(r, RepModule)
        assert r.algebra.dim == 4
        assert r.label == "trivial"

    def test_rep_module_with_bad_action_fails(self):
        text = json.dumps({
            "kind": "rep-module", "label": "bad", "algebra": "c2", "dim": 1, "action": [2, 1],
        })
        with pytest.raises(ValidationError):
            self.document_service.parse_input(text)

    def test_save_writes_loadable_document(self, registry, tmp_path):
        # Arrange
        path = os.path.join(str(tmp_path), "c4.json")

        # Act
        self.document_service.save(registry.resolve("c4"), path)

        # Assert
        assert self.document_service.load(path).same_structure(registry.resolve("c4"))

    def test_shipped_documents(self, registry, documents_dir):
        service = DocumentService(registry, DocumentDAO(documents_dir))
        assert {"c2.json", "eval-c2.json", "sweedler4.json"} <= set(service.shipped())
