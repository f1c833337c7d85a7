"""
应用配置模块
从环境变量加载配置
"""
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()


class Settings(BaseSettings):
    """应用配置类"""

    # 应用配置
    app_env: str = "development"
    app_debug: bool = True
    app_host: str = "localhost"
    app_port: int = 8000

    # 计算配置
    default_field: str = "Q"
    max_intermediate_entries: int = 4_000_000
    max_contraction_entries: int = 100_000_000
    max_dense_unknowns: int = 4096
    verify_on_build: bool = True
    max_workers: int = 1
    random_seed: int = 20240917
    fixture_max_dim: int = 16
    documents_dir: str = "data/documents"

    # 报告配置
    report_format: str = "text"

    # 日志配置
    log_level: str = "INFO"
    log_file: str = ""
    log_max_size: int = 10
    log_backup_count: int = 5

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False


# 创建全局配置实例
settings = Settings()


def validate_config():
    """验证关键配置是否合法"""
    positive_configs = [
        "max_intermediate_entries",
        "max_contraction_entries",
        "max_dense_unknowns",
        "max_workers",
        "fixture_max_dim",
    ]

    for config in positive_configs:
        if getattr(settings, config) <= 0:
            raise ValueError(f"Config {config} must be positive")

    if settings.report_format not in ("text", "json"):
        raise ValueError(f"Unknown report format {settings.report_format}")

    if settings.default_field != "Q" and not settings.default_field.startswith("Fp"):
        raise ValueError(f"Unknown default field {settings.default_field}")


# 验证配置（开发环境可选）
if settings.app_env == "production":
    validate_config()
