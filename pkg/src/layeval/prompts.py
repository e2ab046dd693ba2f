"""Prompt template rendering and few-shot conversation assembly.

Templates live as UTF-8 data files with ``{placeholder}`` slots (literal
braces escaped as ``{{``/``}}``); the recognized placeholders are
``abstract``, ``introduction`` and ``article``. Chat-turn formats are
data-driven so new instruction formats need no code change.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .errors import InvalidParameterError, MissingFieldError

TEMPLATE_NAMES = ("initial", "article_llama", "persona", "intro", "guide")
PLACEHOLDERS = ("abstract", "introduction", "article")

_SLOT_RE = re.compile(r"\{\{|\}\}|\{([a-z_]+)\}|[{}]")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str

    def placeholders(self) -> tuple:
        found = []
        for m in _SLOT_RE.finditer(self.body):
            if m.group(1) and m.group(1) not in found:
                found.append(m.group(1))
        return tuple(found)


@dataclass(frozen=True)
class ChatTurnFormat:
    name: str
    user_open: str
    user_close: str
    assistant_open: str
    assistant_close: str
    system_open: str = ""
    system_close: str = ""


@dataclass(frozen=True)
class InferencePreset:
    strategy: str
    max_new_tokens: int
    repetition_penalty: float


def load_template(name: str, path: Optional[str] = None) -> PromptTemplate:
    """Load a bundled template by name, or any template file by path."""
    if path is not None:
        with open(path, encoding="utf-8") as f:
            return PromptTemplate(name=name, body=f.read())
    if name not in TEMPLATE_NAMES:
        raise InvalidParameterError(
            f"unknown template {name!r}; expected one of {', '.join(TEMPLATE_NAMES)}"
        )
    body = resources.files("layeval.data.templates").joinpath(f"{name}.txt").read_text("utf-8")
    template = PromptTemplate(name=name, body=body)
    unknown = [p for p in template.placeholders() if p not in PLACEHOLDERS]
    if unknown:
        raise InvalidParameterError(f"template {name} has unknown placeholders: {unknown}")
    return template


def render(template: PromptTemplate, doc) -> str:
    """Substitute document fields into the template.

    ``doc`` is anything with abstract/introduction/article attributes (or a
    mapping). A referenced field that is missing or empty raises
    MissingFieldError naming the placeholder.
    """

    def lookup(name):
        if isinstance(doc, dict):
            value = doc.get(name)
        else:
            value = getattr(doc, name, None)
        if not value:
            raise MissingFieldError(name)
        return value

    def replace(m):
        if m.group(0) == "{{":
            return "{"
        if m.group(0) == "}}":
            return "}"
        if m.group(1):
            return lookup(m.group(1))
        raise InvalidParameterError(
            f"template {template.name}: stray brace at offset {m.start()}"
        )

    return _SLOT_RE.sub(replace, template.body)


def assemble_fewshot(template: PromptTemplate, exemplars, query_doc, fmt: ChatTurnFormat) -> str:
    """Build a few-shot conversation ending in an open assistant turn.

    Each exemplar (doc, target_summary) becomes a user turn with the rendered
    prompt and an assistant turn with the target; the query document forms the
    final user turn.
    """
    exemplars = list(exemplars)
    if not exemplars:
        raise InvalidParameterError("assemble_fewshot needs at least one exemplar")
    parts = []
    for doc, target in exemplars:
        if not target:
            raise InvalidParameterError("exemplar target summary is empty")
        parts.append(fmt.user_open + render(template, doc) + fmt.user_close)
        parts.append(fmt.assistant_open + target + fmt.assistant_close)
    parts.append(fmt.user_open + render(template, query_doc) + fmt.user_close)
    parts.append(fmt.assistant_open)
    return "".join(parts)


def count_user_turns(text: str, fmt: ChatTurnFormat) -> int:
    return text.count(fmt.user_open)


def load_chat_formats(path: Optional[str] = None) -> dict:
    """Load chat-turn formats from JSON (bundled file by default).

    The bundled delimiter strings follow the published Mistral and Llama3
    instruction formats; verify them against your model's tokenizer docs
    before relying on them.
    """
    if path is not None:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    else:
        raw = json.loads(
            resources.files("layeval.data").joinpath("chat_formats.json").read_text("utf-8")
        )
    return {name: ChatTurnFormat(name=name, **spec) for name, spec in raw.items()}


def inference_presets() -> dict:
    """Named decoding-parameter records for export; no generation happens here."""
    return {
        "standard": InferencePreset(strategy="greedy", max_new_tokens=1024, repetition_penalty=1.0),
        "des_alternate": InferencePreset(strategy="greedy", max_new_tokens=1024, repetition_penalty=1.1),
    }
