"""Figure rendering for eur-hawking sweep outputs."""

__version__ = "0.1.0"

from .render import (
    DEFAULT_SERIES,
    JobError,
    PlotJob,
    RenderReport,
    default_job,
    render,
    render_batch,
)

__all__ = [
    "DEFAULT_SERIES",
    "JobError",
    "PlotJob",
    "RenderReport",
    "default_job",
    "render",
    "render_batch",
]
