from contextlib import contextmanager
import logging
import sqlite3
import uuid
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Union

from zpgabor.models.search import SearchKind, SearchReport
from zpgabor.storage.storage import ReportStorage, ReportStorageError


class SQLiteReportStorage(ReportStorage):
    def __init__(self, db_path: Union[str, Path] = "zpgabor_reports.db"):
        self.db_path = str(db_path)
        self.initialize()

    def initialize(self):
        try:
            with self._get_connection() as conn:
                cursor = conn.cursor()
                cursor.execute("""
                    CREATE TABLE IF NOT EXISTS reports (
                        id TEXT PRIMARY KEY,
                        created_at TIMESTAMP NOT NULL,
                        kind TEXT NOT NULL,
                        p INTEGER NOT NULL,
                        d INTEGER NOT NULL,
                        shard_index INTEGER NOT NULL,
                        shard_count INTEGER NOT NULL,
                        found INTEGER NOT NULL,
                        exhausted INTEGER NOT NULL,
                        wall_time REAL NOT NULL,
                        body TEXT NOT NULL
                    )
                """)
                cursor.execute("CREATE INDEX IF NOT EXISTS idx_kind ON reports(kind)")
                cursor.execute("CREATE INDEX IF NOT EXISTS idx_created_at ON reports(created_at)")
                conn.commit()
        except sqlite3.Error as e:
            raise ReportStorageError(f"cannot open report archive {self.db_path}: {e}", {"path": self.db_path})
        logging.info(f"Connected to SQLite database at {self.db_path}")

    def close(self):
        # connections are per call
        pass

    @contextmanager
    def _get_connection(self):
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
        finally:
            conn.close()

    def save_report(self, report: SearchReport) -> str:
        report_id = str(uuid.uuid4())
        job = report.job
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                INSERT INTO reports (id, created_at, kind, p, d, shard_index, shard_count, found, exhausted, wall_time, body)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    report_id,
                    datetime.now().isoformat(),
                    job.kind.value,
                    job.p,
                    job.d,
                    job.shard_index,
                    job.shard_count,
                    report.found,
                    int(report.exhausted),
                    report.wall_time,
                    report.to_json(),
                )
            )
            conn.commit()
        logging.info(f"Archived {job.kind.value} report {report_id}")
        return report_id

    def get_report(self, report_id: str) -> SearchReport:
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT body, wall_time FROM reports WHERE id = ?", (report_id,))
            row = cursor.fetchone()
            if not row:
                raise ReportStorageError(f"Report {report_id} not found", {"id": report_id})
            report = SearchReport.model_validate_json(row["body"])
            report.wall_time = row["wall_time"]
            return report

    def list_reports(self, kind: Optional[SearchKind] = None, limit: Optional[int] = None) -> List[dict]:
        query = """
            SELECT id, created_at, kind, p, d, shard_index, shard_count, found, exhausted, wall_time
            FROM reports
        """
        params: list = []
        if kind:
            query += " WHERE kind = ?"
            params.append(SearchKind(kind).value)
        query += " ORDER BY created_at DESC, id ASC"
        if limit is not None:
            query += " LIMIT ?"
            params.append(limit)

        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(query, params)
            return [
                {
                    "id": row["id"],
                    "created_at": row["created_at"],
                    "kind": row["kind"],
                    "p": row["p"],
                    "d": row["d"],
                    "shard": [row["shard_index"], row["shard_count"]],
                    "found": row["found"],
                    "exhausted": bool(row["exhausted"]),
                    "wall_time": row["wall_time"],
                }
                for row in cursor.fetchall()
            ]

    def delete_report(self, report_id: str) -> None:
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("DELETE FROM reports WHERE id = ?", (report_id,))
            conn.commit()
            if cursor.rowcount == 0:
                raise ReportStorageError(f"Report {report_id} not found", {"id": report_id})
