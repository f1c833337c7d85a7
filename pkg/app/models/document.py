"""
JSON 文档模型

文档是带 kind 字段的键值对象：
  hopf        name, field, dim, mult, unit, comult, counit, antipode
  pairing     name, k, h, form（k、h 为注册表名称或内嵌的 hopf 文档）
  yd-module   label, flavor, pairing, dim, action, coaction
  rep-module  label, algebra, dim, action（algebra 可写作 "double:<配对名>"）
field 为 ["Q"] 或 ["Fp", p]；结构常数是按张量下标行优先展开的平坦列表，
有理数写作整数或 "p/q" 字符串
"""
from typing import List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, field_validator

Scalar = Union[StrictInt, StrictStr]
FieldLabel = List[Union[StrictStr, StrictInt]]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class HopfDocument(_Document):
    """Hopf 代数文档"""
    kind: Literal["hopf"]
    name: str = "H"
    field: FieldLabel
    dim: int = Field(gt=0)
    mult: List[Scalar]
    unit: List[Scalar]
    comult: List[Scalar]
    counit: List[Scalar]
    antipode: List[Scalar]

    @field_validator("field")
    @classmethod
    def _check_field(cls, value):
        if value == ["Q"]:
            return value
        if len(value) == 2 and value[0] == "Fp" and isinstance(value[1], int):
            return value
        raise ValueError('field must be ["Q"] or ["Fp", p]')


class PairingDocument(_Document):
    """配对文档"""
    kind: Literal["pairing"]
    name: str = "sigma"
    k: Union[str, HopfDocument]
    h: Union[str, HopfDocument]
    form: List[Scalar]


class YdModuleDocument(_Document):
    """Yetter-Drinfeld 模文档"""
    kind: Literal["yd-module"]
    label: str = "V"
    flavor: str
    pairing: Union[str, PairingDocument]
    dim: int = Field(gt=0)
    action: List[Scalar]
    coaction: List[Scalar]


class RepModuleDocument(_Document):
    """表示文档"""
    kind: Literal["rep-module"]
    label: str = "V"
    algebra: Union[str, HopfDocument]
    dim: int = Field(gt=0)
    action: List[Scalar]


Document = Union[HopfDocument, PairingDocument, YdModuleDocument, RepModuleDocument]
DOCUMENT_KINDS = ("hopf", "pairing", "yd-module", "rep-module")
