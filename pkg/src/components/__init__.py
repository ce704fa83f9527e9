"""
Components module
"""

from .config import render_sidebar_config
from .graph import graph_figure, orbit_figure
from .results import (
    feature_frame,
    matrix_frame,
    render_branches,
    render_conversion_verdict,
    render_stochastic_verdict,
    render_structure_metrics,
    render_transition_verdict,
)

__all__ = [
    'render_sidebar_config',
    'graph_figure',
    'orbit_figure',
    'feature_frame',
    'matrix_frame',
    'render_branches',
    'render_conversion_verdict',
    'render_stochastic_verdict',
    'render_structure_metrics',
    'render_transition_verdict',
]
