import json
from pathlib import Path
from typing import Optional, Dict, Any
import structlog
from algebra.skein import SkeinElement
from core.models import Normalization, VerificationReport


logger = structlog.get_logger()


class OutputManager:
    """Write command results and verification reports to files"""

    def __init__(self, normalization: Normalization = Normalization.T0):
        """Initialize output manager"""
        self.normalization = normalization

    def save_element(
        self,
        element: SkeinElement,
        path: str,
        metadata: Optional[Dict[str, Any]] = None
    ) -> str:
        """Save an element in the skein JSON schema, with optional extra fields"""
        payload = element.to_json()
        if metadata:
            payload.update(metadata)
        if self.normalization == Normalization.TPRIME:
            payload["normalization"] = self.normalization.value
        return self._write_json(payload, path)

    def save_report(self, report: VerificationReport, path: str) -> str:
        """Save a verification report as JSON"""
        return self._write_json(report.to_dict(), path)

    def _write_json(self, payload: Dict[str, Any], path: str) -> str:
        try:
            filepath = Path(path)
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(payload, f, indent=2)
                f.write("\n")

            logger.info(f"Output saved to: {filepath}")
            return str(filepath)

        except OSError as e:
            logger.error(f"Failed to save output: {str(e)}")
            raise
