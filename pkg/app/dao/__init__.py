"""
数据访问层包
"""
from app.dao.document_dao import DocumentDAO

__all__ = ["DocumentDAO"]
