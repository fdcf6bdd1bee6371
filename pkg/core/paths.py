"""
Central path configuration for sb-kit.
Defines and manages all project paths in a centralized way.
"""
from pathlib import Path


class ProjectPaths:
    """
    Manages all project paths consistently throughout the application.
    Ensures the data directories exist upon initialization.
    """

    def __init__(self) -> None:
        # Root directory - works regardless of where code is executed from
        self.ROOT = Path(__file__).parent.parent.absolute()

        # Configuration files
        self.ENV_FILE = self.ROOT / ".env"

        # Main directories
        self.CORE = self.ROOT / "core"
        self.UTILS = self.ROOT / "utils"
        self.WORKFLOWS = self.ROOT / "workflows"
        self.DATA = self.ROOT / "data"

        # Analysis packages
        self.STRUCTURES = self.UTILS / "structures"
        self.CERTIFICATE_TOOLS = self.UTILS / "certificates"

        # Data directories
        self.FIXTURES = self.DATA / "fixtures"
        self.CERTIFICATES = self.DATA / "certificates"
        self.REPORTS = self.DATA / "reports"

        self._create_directories()

    def _create_directories(self) -> None:
        """Create the writable data directories if they don't exist."""
        directories = [self.DATA, self.FIXTURES, self.CERTIFICATES, self.REPORTS]

        for directory in directories:
            directory.mkdir(parents=True, exist_ok=True)

    def __str__(self) -> str:
        """Return a string representation of all paths for debugging."""
        return f"Project root at: {self.ROOT}"


# Create a singleton instance to be imported by other modules
paths = ProjectPaths()
