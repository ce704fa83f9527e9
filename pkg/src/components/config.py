"""
配置侧边栏组件
选择或编辑要分析的动力系统
"""

import json
from typing import Any, Dict, Optional

import streamlit as st

from ..core.errors import DDSError
from ..core.rbn import BooleanNetwork, expand, network_to_document, random_network
from ..core.system import DynamicalSystem, build_system, load_system, system_to_document
from ..utils.config import load_default_config
from ..utils.i18n import t

SOURCES = ['example', 'json', 'network']


def _example_system(explorer: Dict[str, Any]) -> Optional[DynamicalSystem]:
    examples = explorer['examples']
    names = list(examples)
    name = st.sidebar.selectbox(
        t('config.example'),
        options=names,
        index=names.index(explorer['default_example']),
    )
    return build_system(examples[name])


def _json_system(explorer: Dict[str, Any]) -> Optional[DynamicalSystem]:
    default_doc = system_to_document(build_system(explorer['examples'][explorer['default_example']]))
    text = st.sidebar.text_area(
        t('config.system_json'),
        value=json.dumps(default_doc),
        height=120,
        help=t('config.system_json_help'),
    )
    try:
        return load_system(text)
    except DDSError as e:
        st.sidebar.error(f"{e.code}: {e.detail}")
        return None


def _network_system(explorer: Dict[str, Any], max_genes: int) -> Optional[DynamicalSystem]:
    defaults = explorer['random_network']
    genes = st.sidebar.number_input(
        t('config.genes'), min_value=1, max_value=max_genes, value=defaults['genes']
    )
    parents = st.sidebar.number_input(
        t('config.parents'), min_value=0, max_value=int(genes), value=min(defaults['parents'], int(genes))
    )
    seed = st.sidebar.number_input(t('config.seed'), min_value=0, value=defaults['seed'])
    net: BooleanNetwork = random_network(int(genes), int(parents), int(seed))
    with st.sidebar.expander(t('config.network_json')):
        st.code(json.dumps(network_to_document(net)), language='json')
    try:
        return expand(net, max_genes=max_genes)
    except DDSError as e:
        st.sidebar.error(f"{e.code}: {e.detail}")
        return None


def render_sidebar_config() -> Dict[str, Any]:
    """
    渲染侧边栏

    Returns:
        {'config': 完整配置, 'source': 来源, 'system': DynamicalSystem 或 None}
    """
    default_config = load_default_config()
    explorer = default_config['explorer']

    st.sidebar.markdown(f"# {t('config.sidebar_title')}")
    source = st.sidebar.radio(
        t('config.source'),
        options=SOURCES,
        format_func=lambda key: t(f'config.source_{key}'),
    )

    if source == 'example':
        system = _example_system(explorer)
    elif source == 'json':
        system = _json_system(explorer)
    else:
        system = _network_system(explorer, int(default_config['limits']['rbn_max_genes']))

    return {'config': default_config, 'source': source, 'system': system}
