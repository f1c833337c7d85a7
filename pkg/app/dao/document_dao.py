"""
文档访问对象
负责 JSON 文档的读写、解析与确定性输出
"""
import json
import logging
import os
import re
from typing import Annotated, Any, Dict, List, Optional, Sequence, Tuple

import pydantic
from pydantic import Field, TypeAdapter

from app.core.config import settings
from app.core.exceptions import ParseError
from app.models.document import Document

logger = logging.getLogger(__name__)

_ADAPTER = TypeAdapter(Annotated[Document, Field(discriminator="kind")])


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class DocumentDAO:
    """文档访问对象"""

    def __init__(self, documents_dir: Optional[str] = None):
        self.documents_dir = documents_dir or settings.documents_dir

    # ------------------------------------------------------------------
    # 文件
    # ------------------------------------------------------------------
    def read_text(self, path: str) -> str:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()

    def write_text(self, path: str, text: str):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("Wrote document %s", path)

    def list_documents(self) -> List[str]:
        """随附文档目录下的 JSON 文件（排序后）"""
        if not os.path.isdir(self.documents_dir):
            return []
        return sorted(
            os.path.join(self.documents_dir, name)
            for name in os.listdir(self.documents_dir)
            if name.endswith(".json")
        )

    # ------------------------------------------------------------------
    # 解析与输出
    # ------------------------------------------------------------------
    def parse(self, text: str) -> Document:
        """
        解析文档文本

        Args:
            text: JSON 文本

        Returns:
            文档模型

        Raises:
            ParseError: JSON 语法错误或字段不合法，带行列位置
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from e
        if not isinstance(data, dict):
            raise ParseError("Document must be a JSON object")
        try:
            return _ADAPTER.validate_python(data)
        except pydantic.ValidationError as e:
            error = e.errors()[0]
            where = ".".join(str(part) for part in error["loc"]) or "document"
            line, column = self.locate(text, error["loc"])
            raise ParseError(f"{where}: {error['msg']}", line, column) from e

    def locate(self, text: str, loc: Sequence[Any]) -> Tuple[int, int]:
        """字段路径中最内层能在文本中找到的键的行列位置，找不到时为 (1, 1)"""
        for key in reversed([part for part in loc if isinstance(part, str)]):
            match = re.search(r'"%s"\s*:' % re.escape(key), text)
            if match:
                return _position(text, match.start())
        return 1, 1

    def dump(self, document: Document) -> str:
        """
        确定性输出：键排序，每个顶层键一行，内嵌文档与平坦列表各占一行
        """
        data: Dict[str, Any] = document.model_dump()
        lines = [
            f"  {json.dumps(key)}: {json.dumps(data[key], sort_keys=True, ensure_ascii=False)}"
            for key in sorted(data)
        ]
        return "{\n" + ",\n".join(lines) + "\n}\n"
