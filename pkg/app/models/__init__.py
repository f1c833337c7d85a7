"""
数据模型包
"""
from app.models.example_key import ExampleKey
from app.models.hopf import AlgebraData, CoalgebraData, HopfAlgebraData, LinearMap
from app.models.modules import (
    SIDE_K,
    SIDE_K_STAR,
    YD_LEFT_H,
    YD_RIGHT_H,
    DoiHopfContext,
    DoiHopfModule,
    RepModule,
    TwoSidedModule,
    Verified,
    YdModule,
)
from app.models.pairing import HopfPairing
from app.models.partial_dual import ComoduleAlgebra, ModuleCoalgebra, Pams, QuasiHopfData
from app.models.report import ReportEntry, VerificationReport, Witness

__all__ = [
    "ExampleKey",
    "AlgebraData",
    "CoalgebraData",
    "HopfAlgebraData",
    "LinearMap",
    "HopfPairing",
    "ComoduleAlgebra",
    "ModuleCoalgebra",
    "Pams",
    "QuasiHopfData",
    "YdModule",
    "RepModule",
    "DoiHopfContext",
    "DoiHopfModule",
    "TwoSidedModule",
    "Verified",
    "YD_LEFT_H",
    "YD_RIGHT_H",
    "SIDE_K",
    "SIDE_K_STAR",
    "ReportEntry",
    "VerificationReport",
    "Witness",
]
