"""Base parser interface for whitespace-separated graph text files."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, Iterable, List, TypeVar, Union

from mhwalk.errors import GraphFormatError

ResultT = TypeVar("ResultT")


class RecordParser(ABC, Generic[ResultT]):
    """Abstract base class for line-oriented graph file parsers.

    Files are UTF-8 text with one whitespace-separated record per line.
    Blank lines and lines starting with '#' are skipped. Subclasses consume
    records through ``parse_record`` and build their result in ``finish``.
    """

    #: Human-readable record layout used in error messages
    layout: str = ""

    def __init__(self) -> None:
        self.path: Union[str, Path] = "<memory>"

    def parse(self, file_path: Union[str, Path]) -> ResultT:
        """
        Parse a graph text file.

        Args:
            file_path: Path to the file

        Returns:
            Parsed result

        Raises:
            GraphFormatError: If a line cannot be parsed
            FileNotFoundError: If file doesn't exist
        """
        self.path = Path(file_path)
        with open(self.path, "r", encoding="utf-8") as f:
            return self.parse_lines(f)

    def parse_lines(self, lines: Iterable[str]) -> ResultT:
        """Parse records from an iterable of text lines."""
        for line_number, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                self.parse_comment(stripped[1:].strip(), line_number)
                continue
            self.parse_record(stripped.split(), line_number)
        return self.finish()

    def parse_comment(self, text: str, line_number: int) -> None:
        """Inspect a comment line; ignored unless a subclass defines directives."""

    @abstractmethod
    def parse_record(self, fields: List[str], line_number: int) -> None:
        """Consume one record."""

    @abstractmethod
    def finish(self) -> ResultT:
        """Build the result after the last record."""

    def error(self, message: str, line_number: int) -> GraphFormatError:
        """Create a format error pointing at a line of the current file."""
        if self.layout:
            message = f"{message} (expected '{self.layout}')"
        return GraphFormatError(message, path=self.path, line_number=line_number)

    def parse_node_id(self, token: str, line_number: int) -> int:
        """Parse a non-negative integer node id."""
        try:
            value = int(token)
        except ValueError:
            raise self.error(f"invalid node id '{token}'", line_number) from None
        if value < 0:
            raise self.error(f"node id must be non-negative, got {value}", line_number)
        return value
