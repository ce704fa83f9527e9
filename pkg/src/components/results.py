"""
结果展示组件
特征表、转换结论、随机矩阵与 logistic 检查结果
"""

from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
import streamlit as st

from ..core.rational import format_rational
from ..core.stochastic import StochMatrix
from ..core.system import DynamicalSystem, FeatureTable
from ..utils.i18n import t


def feature_frame(sys: DynamicalSystem, table: FeatureTable) -> pd.DataFrame:
    """每个状态一行：名称、吸引域、吸引子、长度、后代数、祖先深度"""
    rows = []
    for s in range(sys.num_states):
        row = table.row(s)
        row['name'] = sys.name(s)
        rows.append(row)
    frame = pd.DataFrame(rows, columns=['state', 'name', 'basin_id', 'attractor_id', 'length', 'progeny', 'ancestry'])
    return frame.set_index('state')


def matrix_frame(F: Any, names: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """
    随机矩阵转成字符串表格，行列都以状态命名

    Args:
        F: StochMatrix 或 object 数组
        names: 状态名，默认用下标
    """
    matrix = F.matrix if isinstance(F, StochMatrix) else F
    size = matrix.shape[0]
    labels = list(names) if names is not None else [str(k) for k in range(size)]
    return pd.DataFrame(
        [[format_rational(matrix[i, j]) for j in range(size)] for i in range(size)],
        index=labels,
        columns=labels,
    )


def render_structure_metrics(report: Dict[str, Any]) -> None:
    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric(t('structure.states'), report['states'])
    with col2:
        st.metric(t('structure.attractors'), len(report['attractors']))
    with col3:
        fixed = report['fixed_points']
        st.metric(t('structure.fixed_points'), ", ".join(map(str, fixed)) if fixed else "∅")


def render_conversion_verdict(report: Dict[str, Any]) -> None:
    """确定性转换结论与见证映射"""
    if report['convertible']:
        st.success(t('deterministic.convertible'))
        witness = report['witness']
        frame = pd.DataFrame({'f(s)': witness}, index=pd.Index(range(len(witness)), name='s'))
        st.dataframe(frame.T, use_container_width=True)
    else:
        st.error(t('deterministic.not_convertible', failed=", ".join(report['failed'])))
    if 'oracle' in report:
        st.caption(t('deterministic.oracle_agrees') if report['oracle'] == report['convertible']
                   else t('deterministic.oracle_disagrees'))


def render_transition_verdict(report: Dict[str, Any], names: Optional[Sequence[str]] = None) -> None:
    verdict = report['verdict']
    if verdict == 'AllowedWithWitness':
        st.success(t('stochastic.allowed', value=report['max_probability']))
    elif verdict == 'PossiblyAllowed':
        st.info(t('stochastic.possibly_allowed'))
    else:
        st.error(t('stochastic.forbidden', reasons=", ".join(report['reasons'])))
    if report['witness'] is not None:
        st.dataframe(_columns_frame(report['witness'], names), use_container_width=True)


def render_stochastic_verdict(report: Dict[str, Any], names: Optional[Sequence[str]] = None) -> None:
    if report['feasible']:
        st.success(t('stochastic.feasible'))
        st.dataframe(_columns_frame(report['witness'], names), use_container_width=True)
    else:
        st.error(t('stochastic.infeasible', certificate=report['certificate']))


def _columns_frame(columns: List[List[str]], names: Optional[Sequence[str]]) -> pd.DataFrame:
    size = len(columns)
    labels = list(names) if names is not None else [str(k) for k in range(size)]
    return pd.DataFrame(
        [[columns[j][i] for j in range(size)] for i in range(size)],
        index=labels,
        columns=labels,
    )


def render_branches(title: str, branches: List[Dict[str, Any]]) -> None:
    st.markdown(f"**{title}**")
    if not branches:
        st.caption("∅")
        return
    rows = []
    for branch in branches:
        row = dict(branch['assignment'])
        row['free'] = ", ".join(branch['free'])
        row['undecided'] = branch['undecided'] or ""
        rows.append(row)
    st.dataframe(pd.DataFrame(rows), use_container_width=True)
