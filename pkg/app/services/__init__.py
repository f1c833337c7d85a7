"""
服务层包
"""
from app.services.document_service import DocumentService
from app.services.double_service import DoubleService
from app.services.duality_service import DualityService
from app.services.export_service import ExportService
from app.services.functor_service import FunctorService
from app.services.hopf_service import HopfService
from app.services.module_category_service import ModuleCategoryService
from app.services.pairing_service import PairingService
from app.services.partial_dual_service import PartialDualService
from app.services.registry_service import RegistryService
from app.services.suite_service import SuiteService

__all__ = [
    "DocumentService",
    "DoubleService",
    "DualityService",
    "ExportService",
    "FunctorService",
    "HopfService",
    "ModuleCategoryService",
    "PairingService",
    "PartialDualService",
    "RegistryService",
    "SuiteService",
]
