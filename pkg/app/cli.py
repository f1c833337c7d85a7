"""
命令行入口

  hopf-engine verify <文件|名称>
  hopf-engine double --pairing <文件|名称> [--emit <输出>]
  hopf-engine partial-dual --pairing <文件|名称>
  hopf-engine check --suite <编号> --target <文件|名称> [--json]
  hopf-engine examples list

退出码：0 全部通过，1 报告失败，2 用法或领域错误
"""
import functools
import logging
import sys

import click

from app import __version__
from app.core.config import settings
from app.core.exceptions import HopfEngineError
from app.core.logging_config import setup_logging
from app.models.hopf import HopfAlgebraData
from app.models.pairing import HopfPairing
from app.models.report import VerificationReport
from app.services.export_service import REPORT_FORMATS, ExportService
from app.services.suite_service import SUITES, SuiteService

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _domain_errors(command):
    """HopfEngineError -> 标准错误输出 + 退出码 2"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HopfEngineError as e:
            logger.debug("Command failed: %s", e)
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_ERROR)

    return wrapper


def _finish(report: VerificationReport, fmt: str):
    click.echo(ExportService().emit_report(report, fmt), nl=False)
    sys.exit(EXIT_PASS if report.overall else EXIT_FAIL)


def _pairing(service: SuiteService, target: str) -> HopfPairing:
    obj = service.resolve_target(target)
    if not isinstance(obj, HopfPairing):
        raise click.UsageError(f"{target} is not a pairing")
    return obj


@click.group()
@click.version_option(__version__, prog_name="hopf-engine")
@click.option("--log-level", default=None, help="覆盖配置中的日志级别")
def cli(log_level):
    """有限维 Hopf 代数精确计算与验证"""
    setup_logging(log_level)


@cli.command()
@click.argument("target")
@click.option("--json", "as_json", is_flag=True, help="输出 JSON 报告")
@_domain_errors
def verify(target, as_json):
    """验证文档或注册表对象的全部公理"""
    report = SuiteService().verify_target(target)
    _finish(report, "json" if as_json else settings.report_format)


@cli.command()
@click.option("--pairing", "pairing_target", required=True, help="配对：注册表名称或文档路径")
@click.option("--emit", "emit_path", default=None, type=click.Path(dir_okay=False),
              help="把量子偶写成 Hopf 代数文档")
@_domain_errors
def double(pairing_target, emit_path):
    """构造配对的量子偶并验证 Hopf 公理"""
    service = SuiteService()
    p = _pairing(service, pairing_target)
    qd: HopfAlgebraData = service.functor_service.double_of(p)
    click.echo(f"{qd.name}: dimension {qd.dim} over {qd.field.label}")
    if emit_path:
        service.document_service.save(qd, emit_path)
        click.echo(f"wrote {emit_path}")
    report = VerificationReport(f"double:{pairing_target}")
    report.merge(service.hopf_service.verify_hopf(qd))
    _finish(report, settings.report_format)


@cli.command("partial-dual")
@click.option("--pairing", "pairing_target", required=True, help="配对：注册表名称或文档路径")
@_domain_errors
def partial_dual(pairing_target):
    """标准 PAMS 的部分对偶：拟 Hopf 公理及与量子偶的比较"""
    service = SuiteService()
    p = _pairing(service, pairing_target)
    pds = service.partial_dual_service
    q = pds.partial_dual(pds.canonical_pams(p))
    click.echo(f"{q.name}: dimension {q.dim} over {q.field.label}")
    report = VerificationReport(f"partial-dual:{pairing_target}")
    report.merge(pds.verify_quasi_hopf(q), "quasi-hopf.")
    report.merge(pds.check_double_realization(p), "realization.")
    _finish(report, settings.report_format)


@cli.command()
@click.option("--suite", required=True, type=click.Choice(SUITES), help="套件编号")
@click.option("--target", required=True, help="注册表名称或文档路径")
@click.option("--json", "as_json", is_flag=True, help="输出 JSON 报告")
@_domain_errors
def check(suite, target, as_json):
    """运行验证套件"""
    report = SuiteService().run_suite(suite, target)
    _finish(report, "json" if as_json else settings.report_format)


@cli.group()
def examples():
    """注册表示例"""


@examples.command("list")
def list_examples():
    """按类别列出注册表名称"""
    for kind, names in SuiteService().registry.list().items():
        click.echo(f"{kind}:")
        for name in names:
            click.echo(f"  {name}")


def main():
    if settings.report_format not in REPORT_FORMATS:
        click.echo(f"error: unknown report format {settings.report_format}", err=True)
        sys.exit(EXIT_ERROR)
    cli()


if __name__ == "__main__":
    main()
