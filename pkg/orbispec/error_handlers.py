# orbispec/error_handlers.py
import click
import structlog

from .errors import OrbispecError
from .utils.formatting import dumps_line

logger = structlog.get_logger(__name__)


def register_error_handlers(group: click.Group) -> click.Group:
    """Map domain errors raised by any subcommand to one JSON line and exit 1."""
    invoke = group.invoke

    def guarded_invoke(ctx: click.Context):
        try:
            return invoke(ctx)
        except OrbispecError as exc:
            logger.info("domain_error", code=exc.code, message=exc.message)
            click.echo(dumps_line(exc.to_dict()), err=True)
            ctx.exit(1)

    group.invoke = guarded_invoke  # type: ignore[method-assign]
    return group
