"""Documents, tokenization, vocabulary, and the JSON Lines file formats.

Everything downstream (tagging, corruption, training, metrics) consumes the
types defined here. Tokenization is a deterministic lowercase word-level
scheme so that runs are reproducible without any external tokenizer.
"""

from __future__ import annotations

import json
import string
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    EmptyCorpus,
    ConfigError,
    FormatError,
    LabelError,
    MissingSummary,
    SpanError,
)

# Reserved vocabulary entries, fixed at indices 0-4.
PAD, UNK, BOS, EOS, MASK = 0, 1, 2, 3, 4
RESERVED_TOKENS = ("<pad>", "<unk>", "<bos>", "<eos>", "<mask>")

# Closed label set for scientific entity annotations.
ENTITY_LABELS = (
    "Task",
    "Method",
    "Metric",
    "Material",
    "Other-Scientific-Term",
    "Generic",
)

_PUNCT = set(string.punctuation)


@dataclass(frozen=True)
class Document:
    """A source text with an optional reference summary."""

    id: str
    text: str
    summary: str | None = None


@dataclass(frozen=True)
class EntitySpan:
    """Half-open token-index range [start, end) labeled with an entity type."""

    start: int
    end: int
    label: str

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class TokenSequence:
    """Parallel token strings and vocabulary ids."""

    tokens: tuple[str, ...]
    ids: tuple[int, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.ids):
            raise ValueError("tokens and ids must have equal length")

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class AnnotatedSentence:
    """One sentence of tokens with its (normalized) entity spans."""

    doc_id: str
    tokens: tuple[str, ...]
    spans: tuple[EntitySpan, ...]


def split_tokens(text: str) -> list[str]:
    """Split text into lowercase word-level tokens.

    Rules: lowercase, split on whitespace, then peel leading and trailing
    ASCII punctuation characters off each chunk as separate tokens.
    Interior punctuation (hyphens, apostrophes, decimal points) stays put.
    """
    out: list[str] = []
    for chunk in text.lower().split():
        lead: list[str] = []
        trail: list[str] = []
        i, j = 0, len(chunk)
        while i < j and chunk[i] in _PUNCT:
            lead.append(chunk[i])
            i += 1
        while j > i and chunk[j - 1] in _PUNCT:
            trail.append(chunk[j - 1])
            j -= 1
        out.extend(lead)
        if i < j:
            out.append(chunk[i:j])
        out.extend(reversed(trail))
    return out


class Vocabulary:
    """Bijective token-to-index map with five reserved entries at 0-4."""

    def __init__(self, tokens: Iterable[str]):
        self.tokens = list(tokens)
        if tuple(self.tokens[:5]) != RESERVED_TOKENS:
            raise ConfigError(
                f"vocabulary must start with the reserved tokens {RESERVED_TOKENS}"
            )
        self.index = {t: i for i, t in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise ConfigError("vocabulary contains duplicate tokens")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    def encode(self, tokens: Iterable[str]) -> list[int]:
        """Map tokens to ids; out-of-vocabulary tokens map to UNK."""
        return [self.index.get(t, UNK) for t in tokens]

    def decode(self, ids: Iterable[int]) -> list[str]:
        """Map ids back to token strings (UNK decodes to the literal '<unk>')."""
        return [self.tokens[i] for i in ids]

    def save(self, path: str | Path) -> None:
        """Write one token per line; line number equals index."""
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for t in self.tokens:
                f.write(t + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        with open(path, encoding="utf-8") as f:
            tokens = [line.rstrip("\n") for line in f]
        return cls(tokens)


def tokenize(text: str, vocab: Vocabulary) -> TokenSequence:
    """Tokenize text and resolve ids against ``vocab`` (UNK when absent)."""
    toks = split_tokens(text)
    return TokenSequence(tuple(toks), tuple(vocab.encode(toks)))


def build_vocab(corpus: Iterable[Document], max_size: int) -> Vocabulary:
    """Build a vocabulary of the most frequent corpus tokens.

    Contains the 5 reserved tokens plus at most ``max_size - 5`` content
    tokens, most frequent first; frequency ties break lexicographically.
    Tokens are counted over every document's text and summary.
    """
    if max_size < len(RESERVED_TOKENS):
        raise ConfigError(f"max_size must be at least {len(RESERVED_TOKENS)}")
    counts: Counter[str] = Counter()
    n_docs = 0
    for doc in corpus:
        n_docs += 1
        counts.update(split_tokens(doc.text))
        if doc.summary is not None:
            counts.update(split_tokens(doc.summary))
    if n_docs == 0:
        raise EmptyCorpus("cannot build a vocabulary from an empty corpus")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    keep = [t for t, _ in ranked[: max_size - len(RESERVED_TOKENS)]]
    return Vocabulary(list(RESERVED_TOKENS) + keep)


def _read_jsonl(path: str | Path):
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise FormatError(f"invalid JSON ({e.msg})", line=lineno) from e
            if not isinstance(record, dict):
                raise FormatError("record is not a JSON object", line=lineno)
            yield lineno, record


def load_documents(path: str | Path, expect_summaries: bool = False) -> list[Document]:
    """Read a JSON Lines documents file, one Document per line, order preserved.

    Each record is ``{"id": str, "text": str, "summary": str|null}``.
    Raises FormatError (with line number) on malformed records and
    MissingSummary when ``expect_summaries`` and a record lacks one.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    for lineno, rec in _read_jsonl(path):
        doc_id = rec.get("id")
        if not isinstance(doc_id, str) or not doc_id:
            raise FormatError("missing or empty 'id'", line=lineno)
        if doc_id in seen:
            raise FormatError(f"duplicate document id {doc_id!r}", line=lineno)
        seen.add(doc_id)
        text = rec.get("text")
        if not isinstance(text, str) or not text.strip():
            raise FormatError("missing or empty 'text'", line=lineno)
        summary = rec.get("summary")
        if summary is not None and not isinstance(summary, str):
            raise FormatError("'summary' must be a string or null", line=lineno)
        if expect_summaries and (summary is None or not summary.strip()):
            raise MissingSummary(f"document {doc_id!r} (line {lineno}) has no summary")
        docs.append(Document(id=doc_id, text=text, summary=summary))
    return docs


def save_documents(docs: Iterable[Document], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for doc in docs:
            rec = {"id": doc.id, "text": doc.text, "summary": doc.summary}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def normalize_spans(spans: Iterable[EntitySpan]) -> tuple[EntitySpan, ...]:
    """Resolve overlapping spans: longer span wins, ties go to the earlier start.

    Output is sorted by start index and pairwise non-overlapping.
    """
    ordered = sorted(spans, key=lambda s: (-(s.end - s.start), s.start, s.label))
    kept: list[EntitySpan] = []
    for span in ordered:
        if all(span.end <= k.start or k.end <= span.start for k in kept):
            kept.append(span)
    return tuple(sorted(kept, key=lambda s: (s.start, s.end, s.label)))


def load_annotations(path: str | Path) -> list[AnnotatedSentence]:
    """Read a JSON Lines annotations file of tokenized sentences with spans.

    Each record is ``{"doc_id": str, "tokens": [str], "spans": [{"start",
    "end", "label"}]}`` with half-open token spans. Labels must come from
    the closed entity label set; overlapping spans are normalized away.
    """
    sentences: list[AnnotatedSentence] = []
    for lineno, rec in _read_jsonl(path):
        doc_id = rec.get("doc_id")
        if not isinstance(doc_id, str) or not doc_id:
            raise FormatError("missing or empty 'doc_id'", line=lineno)
        tokens = rec.get("tokens")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise FormatError("'tokens' must be a list of strings", line=lineno)
        raw = rec.get("spans")
        if not isinstance(raw, list):
            raise FormatError("'spans' must be a list", line=lineno)
        spans = []
        for item in raw:
            if not isinstance(item, dict):
                raise FormatError("span entries must be objects", line=lineno)
            try:
                start, end, label = item["start"], item["end"], item["label"]
            except KeyError as e:
                raise FormatError(f"span missing field {e}", line=lineno) from e
            if label not in ENTITY_LABELS:
                raise LabelError(label)
            if not (isinstance(start, int) and isinstance(end, int)):
                raise FormatError("span bounds must be integers", line=lineno)
            if start < 0 or start >= end or end > len(tokens):
                raise SpanError(
                    f"line {lineno}: span [{start}, {end}) invalid for "
                    f"{len(tokens)} tokens"
                )
            spans.append(EntitySpan(start, end, label))
        sentences.append(
            AnnotatedSentence(
                doc_id=doc_id,
                tokens=tuple(tokens),
                spans=normalize_spans(spans),
            )
        )
    return sentences


def save_annotations(sentences: Iterable[AnnotatedSentence], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for s in sentences:
            rec = {
                "doc_id": s.doc_id,
                "tokens": list(s.tokens),
                "spans": [
                    {"start": sp.start, "end": sp.end, "label": sp.label}
                    for sp in s.spans
                ],
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
