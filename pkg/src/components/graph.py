"""
图形组件
动力图与 logistic 轨道的 plotly 图
"""

from typing import Mapping, Optional, Sequence

import networkx as nx
import numpy as np
import plotly.graph_objects as go

from ..core.rational import format_rational
from ..core.system import DynamicalSystem, FeatureTable, to_graph

PALETTE = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd', '#8c564b', '#e377c2', '#17becf']


def graph_figure(
    sys: DynamicalSystem,
    table: FeatureTable,
    labels: Optional[Sequence] = None,
    title: str = "",
) -> go.Figure:
    """
    动力图：节点按吸引域着色，吸引子状态加粗描边，边画成箭头

    Args:
        sys: 动力系统
        table: analyze(sys) 的结果
        labels: 可选的概率向量，显示在节点旁
        title: 图标题

    Returns:
        plotly Figure
    """
    graph = to_graph(sys)
    positions = nx.spring_layout(graph, seed=0)

    fig = go.Figure()
    for s, t in graph.edges():
        x0, y0 = positions[s]
        x1, y1 = positions[t]
        if s == t:
            # 自环画成节点上方的小圈
            theta = np.linspace(0, 2 * np.pi, 24)
            fig.add_trace(go.Scatter(
                x=x0 + 0.05 * np.cos(theta), y=y0 + 0.05 + 0.05 * np.sin(theta),
                mode='lines', line=dict(width=1, color='#888'), hoverinfo='skip', showlegend=False,
            ))
            continue
        fig.add_annotation(
            x=x1, y=y1, ax=x0, ay=y0, xref='x', yref='y', axref='x', ayref='y',
            showarrow=True, arrowhead=2, arrowsize=1.2, arrowwidth=1, arrowcolor='#888',
            standoff=10, startstandoff=10,
        )

    nodes = list(graph.nodes())
    hover = []
    text = []
    for s in nodes:
        row = table.row(s)
        hover.append(
            f"{sys.name(s)}<br>basin {row['basin_id']} · ℓ={row['length']}"
            f" · d={row['progeny']} · a={row['ancestry']}"
        )
        label = sys.name(s)
        if labels is not None:
            label += f" ({format_rational(labels[s])})"
        text.append(label)

    fig.add_trace(go.Scatter(
        x=[positions[s][0] for s in nodes],
        y=[positions[s][1] for s in nodes],
        mode='markers+text',
        text=text,
        textposition='top center',
        hovertext=hover,
        hoverinfo='text',
        marker=dict(
            size=22,
            color=[PALETTE[table.basin_id[s] % len(PALETTE)] for s in nodes],
            line=dict(width=[3 if table.is_attractor_state(s) else 0 for s in nodes], color='black'),
        ),
        showlegend=False,
    ))
    fig.update_layout(
        title=title,
        height=450,
        template='plotly_white',
        xaxis=dict(visible=False),
        yaxis=dict(visible=False, scaleanchor='x'),
        margin=dict(l=10, r=10, t=40, b=10),
    )
    return fig


def orbit_figure(orbits: Mapping[str, np.ndarray], title: str = "") -> go.Figure:
    """每条轨道一条折线，横轴为迭代步数"""
    fig = go.Figure()
    for name, values in orbits.items():
        fig.add_trace(go.Scatter(x=np.arange(len(values)), y=values, mode='lines+markers', name=name))
    fig.update_layout(
        title=title,
        xaxis_title='n',
        yaxis_title='x',
        height=400,
        template='plotly_white',
    )
    return fig
