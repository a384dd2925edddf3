from abc import ABC, abstractmethod
from typing import List, Optional

from zpgabor.errors import ZpGaborError
from zpgabor.models.search import SearchKind, SearchReport


class ReportStorageError(ZpGaborError):
    """Base exception for report storage errors"""
    code = "storage"


class ReportStorage(ABC):
    """Abstract base class for search report archives"""

    @abstractmethod
    def initialize(self) -> None:
        """Open the archive and create the tables it needs"""
        pass

    @abstractmethod
    def close(self) -> None:
        pass

    @abstractmethod
    def save_report(self, report: SearchReport) -> str:
        """
        Archive a finished report
        Returns: ID of the created record
        """
        pass

    @abstractmethod
    def get_report(self, report_id: str) -> SearchReport:
        pass

    @abstractmethod
    def list_reports(self, kind: Optional[SearchKind] = None, limit: Optional[int] = None) -> List[dict]:
        """Summaries of archived reports, newest first"""
        pass

    @abstractmethod
    def delete_report(self, report_id: str) -> None:
        pass
