"""
文档服务
文档模型与引擎对象之间的转换，解析后的对象在返回前通过验证
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import FlavorMismatch, ParseError, UnknownExample, ValidationError
from app.dao.document_dao import DocumentDAO
from app.models.document import (
    Document,
    HopfDocument,
    PairingDocument,
    RepModuleDocument,
    YdModuleDocument,
)
from app.models.hopf import HopfAlgebraData
from app.models.modules import YD_LEFT_H, YD_RIGHT_H, RepModule, YdModule
from app.models.pairing import HopfPairing
from app.services.registry_service import RegistryService
from app.utils.exact_math import FieldSpec

logger = logging.getLogger(__name__)

Parsed = Union[HopfAlgebraData, HopfPairing, YdModule, RepModule]

DOUBLE_PREFIX = "double:"


class DocumentService:
    """文档服务"""

    def __init__(self, registry: Optional[RegistryService] = None, dao: Optional[DocumentDAO] = None):
        self.registry = registry or RegistryService()
        self.dao = dao or DocumentDAO()
        self.hopf_service = self.registry.hopf_service
        self.pairing_service = self.registry.pairing_service
        self.module_service = self.registry.module_service
        self.functor_service = self.registry.functor_service

    # ------------------------------------------------------------------
    # 解析
    # ------------------------------------------------------------------
    def parse_input(self, text: str) -> Parsed:
        """
        解析文档并验证

        Args:
            text: JSON 文档文本

        Returns:
            HopfAlgebraData、HopfPairing、YdModule 或 RepModule

        Raises:
            ParseError: 语法错误或结构常数长度不符，带行列位置
            ValidationError: 对象未通过公理验证
        """
        document = self.dao.parse(text)
        obj = self._convert(document, text)
        logger.debug("Parsed %s document", document.kind)
        return obj

    def load(self, path: str) -> Parsed:
        return self.parse_input(self.dao.read_text(path))

    def _convert(self, document: Document, text: str) -> Parsed:
        if isinstance(document, HopfDocument):
            return self._hopf(document, text)
        if isinstance(document, PairingDocument):
            return self._pairing(document, text)
        if isinstance(document, YdModuleDocument):
            return self._yd_module(document, text)
        return self._rep_module(document, text)

    def _tensor(self, F: FieldSpec, text: str, key: str, values: Sequence, shape: Tuple[int, ...]) -> np.ndarray:
        expected = int(np.prod(shape))
        if len(values) != expected:
            line, column = self.dao.locate(text, [key])
            raise ParseError(f"{key} has {len(values)} entries, expected {expected}", line, column)
        try:
            return F.array(list(values)).reshape(shape)
        except (ValueError, ZeroDivisionError) as e:
            line, column = self.dao.locate(text, [key])
            raise ParseError(f"{key}: {e}", line, column) from e

    @staticmethod
    def _field(label: List) -> FieldSpec:
        if label == ["Q"]:
            return FieldSpec.rationals()
        return FieldSpec.prime_field(label[1])

    def _hopf(self, doc: HopfDocument, text: str) -> HopfAlgebraData:
        F, n = self._field(doc.field), doc.dim
        tensors = {
            "mult": (doc.mult, (n, n, n)),
            "unit": (doc.unit, (n,)),
            "comult": (doc.comult, (n, n, n)),
            "counit": (doc.counit, (n,)),
            "antipode": (doc.antipode, (n, n)),
        }
        arrays = {key: self._tensor(F, text, key, values, shape) for key, (values, shape) in tensors.items()}
        return self.hopf_service.build(doc.name, F, verify=True, **arrays)

    def _hopf_ref(self, ref: Union[str, HopfDocument], text: str) -> HopfAlgebraData:
        if isinstance(ref, HopfDocument):
            return self._hopf(ref, text)
        resolved = self.registry.resolve(ref)
        if not isinstance(resolved, HopfAlgebraData):
            raise UnknownExample(f"{ref} is not a Hopf algebra")
        return resolved

    def _pairing(self, doc: PairingDocument, text: str) -> HopfPairing:
        k_alg = self._hopf_ref(doc.k, text)
        h_alg = self._hopf_ref(doc.h, text)
        form = self._tensor(k_alg.field, text, "form", doc.form, (k_alg.dim, h_alg.dim))
        pairing = HopfPairing(doc.name, k_alg, h_alg, form)
        report = self.pairing_service.verify_pairing(pairing)
        if not report.overall:
            raise ValidationError(report)
        return pairing

    def _pairing_ref(self, ref: Union[str, PairingDocument], text: str) -> HopfPairing:
        if isinstance(ref, PairingDocument):
            return self._pairing(ref, text)
        resolved = self.registry.resolve(ref)
        if not isinstance(resolved, HopfPairing):
            raise UnknownExample(f"{ref} is not a pairing")
        return resolved

    def _yd_module(self, doc: YdModuleDocument, text: str) -> YdModule:
        p = self._pairing_ref(doc.pairing, text)
        F, m, n, d = p.field, p.k_alg.dim, p.h_alg.dim, doc.dim
        if doc.flavor == YD_LEFT_H:
            shapes = (n, d, d), (d, d, m)
        elif doc.flavor == YD_RIGHT_H:
            shapes = (d, n, d), (d, m, d)
        else:
            raise FlavorMismatch(f"Unknown YD flavor {doc.flavor}")
        v = YdModule(
            doc.flavor, p, d,
            self._tensor(F, text, "action", doc.action, shapes[0]),
            self._tensor(F, text, "coaction", doc.coaction, shapes[1]),
            label=doc.label,
        )
        return self.module_service.certify(v).value

    def _rep_module(self, doc: RepModuleDocument, text: str) -> RepModule:
        if isinstance(doc.algebra, str) and doc.algebra.startswith(DOUBLE_PREFIX):
            pairing = self._pairing_ref(doc.algebra[len(DOUBLE_PREFIX):], text)
            algebra = self.functor_service.double_of(pairing)
        else:
            algebra = self._hopf_ref(doc.algebra, text)
        d = doc.dim
        action = self._tensor(algebra.field, text, "action", doc.action, (algebra.dim, d, d))
        return self.module_service.certify(RepModule(algebra, d, action, label=doc.label)).value

    # ------------------------------------------------------------------
    # 输出
    # ------------------------------------------------------------------
    def to_document(self, obj: Parsed) -> Document:
        """
        引擎对象 -> 文档模型（内嵌依赖的代数与配对）

        Raises:
            TypeError: 不支持的对象
        """
        if isinstance(obj, HopfAlgebraData):
            return self._hopf_document(obj)
        if isinstance(obj, HopfPairing):
            return self._pairing_document(obj)
        if isinstance(obj, YdModule):
            F = obj.pairing.field
            return YdModuleDocument(
                kind="yd-module", label=obj.label, flavor=obj.flavor,
                pairing=self._pairing_document(obj.pairing), dim=obj.dim,
                action=self._flat(F, obj.action), coaction=self._flat(F, obj.coaction),
            )
        if isinstance(obj, RepModule):
            return RepModuleDocument(
                kind="rep-module", label=obj.label, algebra=self._hopf_document(obj.algebra),
                dim=obj.dim, action=self._flat(obj.algebra.field, obj.action),
            )
        raise TypeError(f"Cannot serialize {type(obj).__name__}")

    def emit(self, obj: Parsed) -> str:
        return self.dao.dump(self.to_document(obj))

    def save(self, obj: Parsed, path: str):
        self.dao.write_text(path, self.emit(obj))

    @staticmethod
    def _flat(F: FieldSpec, tensor: np.ndarray) -> List:
        return [F.to_json_scalar(x) for x in np.asarray(tensor).flat]

    @staticmethod
    def _field_label(F: FieldSpec) -> List:
        return ["Q"] if F.is_rational else ["Fp", F.characteristic]

    def _hopf_document(self, h: HopfAlgebraData) -> HopfDocument:
        F = h.field
        return HopfDocument(
            kind="hopf", name=h.name, field=self._field_label(F), dim=h.dim,
            mult=self._flat(F, h.mult), unit=self._flat(F, h.unit),
            comult=self._flat(F, h.comult), counit=self._flat(F, h.counit),
            antipode=self._flat(F, h.antipode),
        )

    def _pairing_document(self, p: HopfPairing) -> PairingDocument:
        return PairingDocument(
            kind="pairing", name=p.name,
            k=self._hopf_document(p.k_alg), h=self._hopf_document(p.h_alg),
            form=self._flat(p.field, p.form),
        )

    def shipped(self) -> Dict[str, str]:
        """随附文档：文件名 -> 路径"""
        return {path.rsplit("/", 1)[-1]: path for path in self.dao.list_documents()}
