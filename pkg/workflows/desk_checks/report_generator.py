from datetime import datetime
from pathlib import Path
from typing import Any, Dict


class MarkdownReportGenerator:
    """Generates a Markdown report of the desk-check sweeps."""

    def __init__(self, results: Dict[str, Dict[str, Any]], seed: int):
        """Initialize with per-family results and the sweep seed."""
        self.results = results
        self.seed = seed
        self.report_sections = []

    def add_section(self, title: str, content: str) -> None:
        """Add a section to the report."""
        self.report_sections.append(f"## {title}\n\n{content}")

    def generate_family_section(self, family: str, title: str) -> None:
        """Generate the section for one sweep family."""
        family_results = self.results.get(family, {})
        if not family_results:
            return

        content = f"- **Runtime:** {family_results['runtime_s']:.1f} s\n"
        content += f"- **Status:** {'passed' if family_results['all_passed'] else 'FAILED'}\n\n"
        content += "| Criterion | Description | Instances | Failures |\n"
        content += "|-----------|-------------|-----------|----------|\n"
        for criterion in family_results['criteria']:
            content += (
                f"| {criterion['criterion']} | {criterion['description']} "
                f"| {criterion['instances']} | {criterion['failures']} |\n"
            )

        for criterion in family_results['criteria']:
            if criterion['examples']:
                content += f"\n**Failing instances for criterion {criterion['criterion']}:**\n"
                for example in criterion['examples']:
                    content += f"- `{example['instance']}` {example['detail']}\n"

        self.add_section(title, content)

    def generate_report(self) -> str:
        """Generate the complete Markdown report."""
        header = "# sb-kit Desk Check Report\n\n"
        header += f"- **Generated:** {datetime.now().strftime('%Y-%m-%d %H:%M')}\n"
        header += f"- **Seed:** {self.seed}\n"
        header += f"- **Families:** {', '.join(self.results) or 'none'}\n\n"
        return header + "\n\n".join(self.report_sections) + "\n"

    def save_report(self, output_path: Path) -> None:
        """Save the report to a file."""
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(self.generate_report())
