"""Structured JSON logging to stderr."""

import logging
import sys
import uuid
from datetime import datetime, timezone
from typing import Any, Dict

from pythonjsonlogger import jsonlogger


# One ID per process so that log lines of a CLI run can be correlated
RUN_ID = str(uuid.uuid4())


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    """JSON formatter that adds run_id and standardized fields."""

    def add_fields(
        self,
        log_record: Dict[str, Any],
        record: logging.LogRecord,
        message_dict: Dict[str, Any],
    ) -> None:
        """Add custom fields to log record.

        Args:
            log_record: The log record to modify.
            record: The original logging.LogRecord.
            message_dict: Additional fields from the logging call.
        """
        super().add_fields(log_record, record, message_dict)

        log_record["timestamp"] = datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")
        log_record["run_id"] = RUN_ID
        log_record["level"] = record.levelname
        log_record["logger"] = record.name


def setup_logging(level: str = "WARNING") -> logging.Logger:
    """Configure structured JSON logging on the root logger.

    Logs go to stderr; stdout is reserved for command output.

    Args:
        level: Log level name.

    Returns:
        logging.Logger: Configured root logger.
    """
    logger = logging.getLogger()
    logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    json_handler = logging.StreamHandler(sys.stderr)
    json_handler.setFormatter(CustomJsonFormatter("%(message)s", timestamp=True))
    logger.addHandler(json_handler)

    return logger


def log_axiom_report(subject: str, ok: bool, axioms_violated: list[str], violations: int) -> None:
    """Log the outcome of an axiom check.

    Args:
        subject: What was checked (e.g. "specialization semilattice").
        ok: Whether every axiom held.
        axioms_violated: Distinct violated axiom tags.
        violations: Total number of violations.
    """
    logger = logging.getLogger(__name__)
    logger.log(
        logging.INFO if ok else logging.WARNING,
        "Axiom check completed",
        extra={
            "subject": subject,
            "ok": ok,
            "axioms_violated": axioms_violated,
            "violations": violations,
        },
    )


def log_extension_built(
    base_size: int,
    pairs: int,
    classes: int,
    z: list[int],
    normalized: bool,
    duration_ms: int,
) -> None:
    """Log a completed extension build.

    Args:
        base_size: |S|.
        pairs: Size of the enumerated pair space.
        classes: Number of classes in the extension.
        z: Designated closures (empty for the plain extension).
        normalized: Whether the pair space was pre-normalized.
        duration_ms: Build time in milliseconds.
    """
    logger = logging.getLogger(__name__)
    logger.info(
        "Extension built",
        extra={
            "base_size": base_size,
            "pairs": pairs,
            "classes": classes,
            "z": z,
            "normalized": normalized,
            "duration_ms": duration_ms,
        },
    )


def log_verification_summary(
    property_name: str, instances_checked: int, failures: int, duration_sec: float
) -> None:
    """Log the summary of a verification run."""
    logger = logging.getLogger(__name__)
    logger.log(
        logging.INFO if failures == 0 else logging.ERROR,
        "Verification completed",
        extra={
            "property": property_name,
            "instances_checked": instances_checked,
            "failures": failures,
            "duration_sec": duration_sec,
        },
    )


def log_cli_command(command: str, exit_code: int, duration_sec: float) -> None:
    logger = logging.getLogger(__name__)
    logger.info(
        "Command finished",
        extra={"command": command, "exit_code": exit_code, "duration_sec": duration_sec},
    )
