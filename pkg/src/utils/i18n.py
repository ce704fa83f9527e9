"""
国际化工具模块
翻译文件位于 src/config/translations/<语言>.json，键支持点分嵌套
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

import streamlit as st

from .console import print_flush

TRANSLATIONS_DIR = Path(__file__).parent.parent / "config" / "translations"

# 语言代码 → (显示名称, 旗帜)
LANGUAGES = {
    "zh_CN": ("简体中文", "🇨🇳"),
    "en_US": ("English", "🇺🇸"),
}
DEFAULT_LANGUAGE = "zh_CN"


class I18nManager:
    """国际化管理器，当前语言保存在 st.session_state.language"""

    def __init__(self, translations_dir: Path = TRANSLATIONS_DIR):
        self.translations: Dict[str, Dict[str, Any]] = {}
        self.current_language = DEFAULT_LANGUAGE
        for lang in LANGUAGES:
            path = translations_dir / f"{lang}.json"
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    self.translations[lang] = json.load(f)
            except FileNotFoundError:
                print_flush(f"⚠️ 未找到语言文件 {path}")
                self.translations[lang] = {}

    def set_language(self, language: str):
        if language not in LANGUAGES:
            print_flush(f"⚠️ 不支持的语言 {language}")
            return
        self.current_language = language
        st.session_state.language = language

    def get_current_language(self) -> str:
        if 'language' in st.session_state:
            self.current_language = st.session_state.language
        return self.current_language

    def t(self, key: str, **kwargs) -> str:
        """
        获取翻译文本，找不到时依次回退到默认语言和键本身

        Args:
            key: 翻译键，如 'structure.title'
            **kwargs: 格式化参数

        Returns:
            翻译后的文本
        """
        lang = self.get_current_language()
        text = self._lookup(self.translations.get(lang, {}), key)
        if text is None and lang != DEFAULT_LANGUAGE:
            text = self._lookup(self.translations.get(DEFAULT_LANGUAGE, {}), key)
        if text is None:
            return key
        if kwargs:
            try:
                return text.format(**kwargs)
            except (KeyError, ValueError) as e:
                print_flush(f"⚠️ 翻译格式化错误: {key} - {e}")
        return text

    @staticmethod
    def _lookup(data: Dict[str, Any], key: str) -> Optional[str]:
        current: Any = data
        for part in key.split('.'):
            if not isinstance(current, dict) or part not in current:
                return None
            current = current[part]
        return current if isinstance(current, str) else None


_i18n_manager: Optional[I18nManager] = None


def get_i18n_manager() -> I18nManager:
    global _i18n_manager
    if _i18n_manager is None:
        _i18n_manager = I18nManager()
    return _i18n_manager


def t(key: str, **kwargs) -> str:
    """快捷翻译函数"""
    return get_i18n_manager().t(key, **kwargs)


def set_language(language: str):
    get_i18n_manager().set_language(language)


def get_current_language() -> str:
    return get_i18n_manager().get_current_language()


def get_supported_languages() -> Dict[str, str]:
    return {code: name for code, (name, _flag) in LANGUAGES.items()}


def get_language_flag(language: str) -> str:
    return LANGUAGES.get(language, ("", "🌐"))[1]
