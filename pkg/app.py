"""
DDS Covariance Streamlit App - Tab切换版本
结构分析、确定性转换、随机转换与 logistic 映射四个标签页
"""

import sys
from pathlib import Path

import streamlit as st

# 添加项目根路径
sys.path.insert(0, str(Path(__file__).parent))

from src.components import (
    feature_frame,
    graph_figure,
    orbit_figure,
    render_branches,
    render_conversion_verdict,
    render_sidebar_config,
    render_stochastic_verdict,
    render_structure_metrics,
    render_transition_verdict,
)
from src.core import AnalysisEngine, DDSError
from src.core.logistic import orbit
from src.core.rational import format_rational
from src.core.stochastic import ProbVec, free_state_basis, stationary_uniform
from src.core.system import analyze
from src.utils import load_default_config
from src.utils.i18n import get_current_language, get_language_flag, get_supported_languages, set_language, t

# 页面配置
default_config = load_default_config()

if 'language' not in st.session_state:
    st.session_state.language = 'zh_CN'

set_language(st.session_state.language)

st.set_page_config(
    page_title=t('app.title'),
    page_icon=default_config['app']['page_icon'],
    layout=default_config['app']['layout'],
    initial_sidebar_state=default_config['app']['initial_sidebar_state'],
)


def init_session_state():
    """初始化 session state"""
    if 'engine' not in st.session_state:
        st.session_state.engine = AnalysisEngine(default_config)
    if 'transition_report' not in st.session_state:
        st.session_state.transition_report = None


def render_language_selector():
    languages = get_supported_languages()
    current_lang = get_current_language()

    st.markdown("**🌐 Language / 语言**")
    selected_lang = st.radio(
        "Language",
        options=list(languages.keys()),
        format_func=lambda x: f"{get_language_flag(x)} {languages[x]}",
        index=list(languages.keys()).index(current_lang),
        key="language_selector",
        label_visibility="collapsed",
    )
    if selected_lang != current_lang:
        set_language(selected_lang)
        st.rerun()


def _state_picker(label: str, system, key: str, default: int = 0) -> int:
    return st.selectbox(
        label,
        options=list(range(system.num_states)),
        index=min(default, system.num_states - 1),
        format_func=system.name,
        key=key,
    )


def tab_structure(system):
    """Tab 1: 吸引子、吸引域与特征表"""
    engine: AnalysisEngine = st.session_state.engine
    st.markdown(f"## {t('structure.title')}")

    report = engine.analyze_report(system)
    table = analyze(system)
    render_structure_metrics(report)

    col_left, col_right = st.columns([1, 1])
    with col_left:
        st.markdown(f"### {t('structure.features')}")
        st.dataframe(feature_frame(system, table), use_container_width=True)
    with col_right:
        st.markdown(f"### {t('structure.graph')}")
        if system.num_states <= default_config['explorer']['max_drawn_states']:
            st.plotly_chart(graph_figure(system, table), use_container_width=True, key="structure_graph")
        else:
            st.info(t('structure.too_many_states', count=system.num_states))

    with st.expander(t('structure.dot_export')):
        st.code(engine.dot_report(system), language='dot')


def tab_deterministic(system):
    """Tab 2: 确定性协变转换与见证映射"""
    engine: AnalysisEngine = st.session_state.engine
    st.markdown(f"## {t('deterministic.title')}")
    st.markdown(t('deterministic.description'))

    col1, col2 = st.columns(2)
    with col1:
        s = _state_picker(t('deterministic.from_state'), system, "det_from")
    with col2:
        s_prime = _state_picker(t('deterministic.to_state'), system, "det_to")

    limit = default_config['limits']['oracle_max_maps']
    use_oracle = st.checkbox(
        t('deterministic.use_oracle'),
        value=False,
        disabled=system.num_states ** system.num_states > limit,
        help=t('deterministic.oracle_help'),
    )
    render_conversion_verdict(engine.convert_report(system, s, s_prime, use_oracle=use_oracle))


def tab_stochastic(system):
    """Tab 3: 随机协变影响"""
    engine: AnalysisEngine = st.session_state.engine
    names = [system.name(s) for s in range(system.num_states)]
    st.markdown(f"## {t('stochastic.title')}")

    col1, col2 = st.columns(2)
    with col1:
        s = _state_picker(t('stochastic.from_state'), system, "stoch_from")
    with col2:
        s_prime = _state_picker(t('stochastic.to_state'), system, "stoch_to", default=1)

    if st.button(t('stochastic.check_button'), use_container_width=True):
        st.session_state.transition_report = engine.transition_report(system, s, s_prime)
    report = st.session_state.transition_report
    if report is not None:
        render_transition_verdict(report, names)

    st.markdown("---")
    st.markdown(f"### {t('stochastic.free_states')}")
    basis = free_state_basis(system)
    st.dataframe(
        {f"u{k}": [format_rational(v) for v in p] for k, p in enumerate(basis)},
        use_container_width=True,
    )

    st.markdown(f"### {t('stochastic.conversion')}")
    col_p, col_q = st.columns(2)
    with col_p:
        p_text = st.text_input(t('stochastic.source_vector'), value=", ".join(
            format_rational(v) for v in ProbVec.point_mass(system.num_states, s)))
    with col_q:
        q_text = st.text_input(t('stochastic.target_vector'), value=", ".join(
            format_rational(v) for v in ProbVec.point_mass(system.num_states, s_prime)))
    p_values = [v.strip() for v in p_text.split(',')]
    q_values = [v.strip() for v in q_text.split(',')]
    try:
        if st.button(t('stochastic.convert_button'), use_container_width=True):
            render_stochastic_verdict(engine.stochastic_convert_report(system, p_values, q_values), names)
        limit = stationary_uniform(system, ProbVec.parse(p_values))
        st.caption(t('stochastic.stationary', vector=", ".join(format_rational(v) for v in limit)))
    except DDSError as e:
        st.error(f"{e.code}: {e.detail}")


def tab_logistic():
    """Tab 4: logistic 映射的多项式影响"""
    engine: AnalysisEngine = st.session_state.engine
    explorer = default_config['explorer']
    st.markdown(f"## {t('logistic.title')}")
    st.markdown(t('logistic.description'))

    col_params, col_plot = st.columns([1, 2])
    with col_params:
        r = st.text_input("r", value="3")
        x0 = st.text_input("x₀", value="1/5")
        a = st.text_input("a", value="0")
        b = st.text_input("b", value="0")
        c = st.text_input("c", value="0")
    with col_plot:
        try:
            steps = int(explorer['orbit_steps'])
            orbits = {
                t('logistic.plain_orbit'): orbit(r, x0, steps),
                t('logistic.influenced_orbit'): orbit(r, x0, steps, a, b, c),
            }
            st.plotly_chart(orbit_figure(orbits, title=t('logistic.orbit_title')),
                            use_container_width=True, key="logistic_orbit")
        except DDSError as e:
            st.error(f"{e.code}: {e.detail}")

    st.markdown("---")
    col1, col2, col3 = st.columns(3)
    try:
        with col1:
            if st.button(t('logistic.verify_button'), use_container_width=True):
                report = engine.logistic_report('verify', degree=2, assignment={'a': a, 'b': b, 'c': c})
                if report['covariant']:
                    st.success(t('logistic.covariant'))
                else:
                    st.error(t('logistic.not_covariant'))
        with col2:
            if st.button(t('logistic.range_button'), use_container_width=True):
                report = engine.logistic_report('range', r_values=[r])
                result = report['results'][0]
                if result['verdict'] == 'WellPosed':
                    st.success(t('logistic.well_posed'))
                else:
                    st.error(t('logistic.escapes', x=result['witness'], value=result['value']))
        with col3:
            if st.button(t('logistic.cubic_button'), use_container_width=True):
                report = engine.logistic_report('cubic')
                for sample in report['samples']:
                    render_branches(t('logistic.cubic_sample', r=sample['r']), sample['cubic_branches'])
                if report['all_inconsistent']:
                    st.success(t('logistic.cubic_inconsistent'))
                else:
                    st.warning(t('logistic.cubic_open'))
    except DDSError as e:
        st.error(f"{e.code}: {e.detail}")


def main():
    """主函数"""
    init_session_state()

    col1, col2 = st.columns([5, 1])
    with col1:
        st.title(t('app.title'))
        st.markdown(t('app.subtitle'))
    with col2:
        st.markdown("")
        render_language_selector()

    st.markdown("---")

    sidebar = render_sidebar_config()
    system = sidebar['system']

    tab1, tab2, tab3, tab4 = st.tabs([
        t('navigation.structure'),
        t('navigation.deterministic'),
        t('navigation.stochastic'),
        t('navigation.logistic'),
    ])

    if system is None:
        for tab in (tab1, tab2, tab3):
            with tab:
                st.info(t('config.no_system'))
    else:
        with tab1:
            tab_structure(system)
        with tab2:
            tab_deterministic(system)
        with tab3:
            tab_stochastic(system)
    with tab4:
        tab_logistic()

    st.markdown("---")
    st.markdown(f"""
        <div style='text-align: center; color: gray; padding: 20px;'>
            <p>{t('app.powered_by')}</p>
        </div>
    """, unsafe_allow_html=True)


if __name__ == "__main__":
    main()
