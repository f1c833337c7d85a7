"""
FastAPI主应用入口
"""
import json
from typing import Any, Dict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from app import __version__
from app.core.config import settings
from app.core.exceptions import HopfEngineError
from app.core.logging_config import setup_logging
from app.models.report import VerificationReport
from app.services.export_service import ExportService
from app.services.suite_service import SuiteService

# 创建FastAPI应用
app = FastAPI(
    title="Hopf Engine",
    description="有限维 Hopf 代数精确计算与验证",
    version=__version__,
    debug=settings.app_debug,
)

# 初始化服务
suite_service = SuiteService()
export_service = ExportService()


class CheckRequest(BaseModel):
    """套件请求"""
    suite: str
    target: str


class VerifyRequest(BaseModel):
    """文档验证请求"""
    document: Dict[str, Any]


def _report_content(report: VerificationReport) -> Dict[str, Any]:
    # 与 emit_report(json) 相同的文档
    return json.loads(export_service.emit_report(report, "json"))


@app.on_event("startup")
async def startup_event():
    setup_logging()


@app.exception_handler(HopfEngineError)
async def domain_error_handler(request: Request, exc: HopfEngineError):
    return JSONResponse(status_code=400, content={"error": str(exc)})


@app.get("/api/health")
async def health_check():
    """健康检查"""
    return {"status": "healthy", "version": __version__}


@app.get("/api/examples")
async def list_examples():
    """按类别列出注册表名称"""
    return suite_service.registry.list()


@app.post("/api/check")
def run_check(request: CheckRequest):
    """
    运行验证套件

    Args:
        request: {suite, target}，target 只按注册表名称解析
    """
    report = suite_service.run_suite(request.suite, request.target, allow_files=False)
    return _report_content(report)


@app.post("/api/verify")
def verify_document(request: VerifyRequest):
    """验证上传的 JSON 文档"""
    text = json.dumps(request.document, sort_keys=True, indent=2)
    obj = suite_service.document_service.parse_input(text)
    subject = f"verify:{request.document.get('kind', 'document')}"
    return _report_content(suite_service.verify_object(obj, subject))


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host=settings.app_host,
        port=settings.app_port,
        reload=settings.app_debug,
    )
