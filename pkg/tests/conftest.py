"""
pytest配置和通用fixture
"""
import os
import sys

import pytest

# 添加项目根目录到路径
ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, ROOT)

from app.services.suite_service import SuiteService  # noqa: E402
from app.utils.exact_math import FieldSpec  # noqa: E402

DOCUMENTS_DIR = os.path.join(ROOT, "data", "documents")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture(scope="session")
def suite_service():
    """整个测试会话共用的套件服务（注册表对象按名称缓存）"""
    return SuiteService()


@pytest.fixture(scope="session")
def registry(suite_service):
    """注册表"""
    return suite_service.registry


@pytest.fixture
def rationals():
    return FieldSpec.rationals()


@pytest.fixture
def f7():
    return FieldSpec.prime_field(7)


@pytest.fixture(scope="session")
def documents_dir():
    return DOCUMENTS_DIR


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR
