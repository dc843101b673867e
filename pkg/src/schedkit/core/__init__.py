from .instance import Instance, Job, InstanceError, ParseError, parse_instance, serialize_instance
from .schedule import (Schedule, Piece, Objective, PiecewiseLinear, lateness_fn,
                       evaluate, validate_schedule, ValidationReport,
                       parse_schedule, serialize_schedule)
from .gantt import render_gantt, render_text, render_svg
from . import fixtures

__all__ = [
    "Instance", "Job", "InstanceError", "ParseError",
    "parse_instance", "serialize_instance",
    "Schedule", "Piece", "Objective", "PiecewiseLinear", "lateness_fn",
    "evaluate", "validate_schedule", "ValidationReport",
    "parse_schedule", "serialize_schedule",
    "render_gantt", "render_text", "render_svg",
    "fixtures",
]
