from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined

TEMPLATE_DIR = Path(__file__).parent / "templates"

templates = Environment(
    loader=FileSystemLoader(TEMPLATE_DIR),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def render_summary(report, summary: dict) -> str:
    """Human-readable text for a run report; commands pick a template via summary["template"]."""
    name = summary.get("template", "summary")
    return templates.get_template(f"{name}.txt.j2").render(report=report, summary=summary)
