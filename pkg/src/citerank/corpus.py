"""Citation-network data model, CSV ingestion, and dataset filtering.

A :class:`Corpus` holds journals (with per-year article counts) and
aggregated citation records.  Records are journal-pair-year counts, not
per-article events; records with identical (citing, cited, citing_year,
cited_year) keys are merged by summing counts, so merging is idempotent
and order-independent.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, TYPE_CHECKING, Iterable, Iterator

import numpy as np

from .errors import CorpusError

if TYPE_CHECKING:
    from .metrics import MetricVector

# (citing id, cited id, citing year, cited publication year)
CitationKey = tuple[str, str, int, int]

JOURNALS_HEADER = ["id", "name", "year", "articles"]
CITATIONS_HEADER = ["citing", "cited", "citing_year", "cited_year", "count"]


@dataclass(frozen=True)
class Journal:
    """One journal: opaque unique id, display name, article counts per year."""

    id: str
    name: str
    articles_by_year: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise CorpusError("journal id must be non-empty")
        for year, n in self.articles_by_year.items():
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise CorpusError(
                    f"journal {self.id!r}: article count for {year} must be an integer >= 0, got {n!r}"
                )

    def articles_in(self, years: Iterable[int]) -> int:
        return sum(self.articles_by_year.get(y, 0) for y in years)


@dataclass(frozen=True)
class CitationRecord:
    """Aggregated citation edge: `citing` cited `cited` `count` times.

    `citing_year` is the year the citations were made; `cited_year` is the
    publication year of the cited items, never later than `citing_year`.
    """

    citing: str
    cited: str
    citing_year: int
    cited_year: int
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise CorpusError(
                f"citation {self.citing}->{self.cited}: count must be >= 1, got {self.count}"
            )
        if self.cited_year > self.citing_year:
            raise CorpusError(
                f"citation {self.citing}->{self.cited}: cited_year {self.cited_year} "
                f"is after citing_year {self.citing_year}"
            )

    @property
    def key(self) -> tuple[str, str, int, int]:
        return (self.citing, self.cited, self.citing_year, self.cited_year)


@dataclass(frozen=True)
class CitationWindow:
    """Which citations count, and which publication years supply article counts.

    mode "cited-window": citations made in `census_year` to items published
    in the `span` preceding years, i.e. cited_year in
    [census_year - span, census_year - 1].
    mode "all-years": every record counts, article counts come from every
    year present in the data.
    """

    mode: str
    census_year: int | None = None
    span: int = 5

    def __post_init__(self):
        if self.mode not in ("cited-window", "all-years"):
            raise ValueError(f"unknown window mode {self.mode!r}")
        if self.mode == "cited-window":
            if self.census_year is None:
                raise ValueError("cited-window mode requires a census year")
            if self.span < 1:
                raise ValueError(f"window span must be >= 1, got {self.span}")

    @classmethod
    def all_years(cls) -> "CitationWindow":
        return cls(mode="all-years")

    @classmethod
    def cited(cls, census_year: int, span: int = 5) -> "CitationWindow":
        return cls(mode="cited-window", census_year=census_year, span=span)

    def includes(self, citing_year: int, cited_year: int) -> bool:
        if self.mode == "all-years":
            return True
        return (
            citing_year == self.census_year
            and self.census_year - self.span <= cited_year <= self.census_year - 1
        )

    def mask(self, citing_years: np.ndarray, cited_years: np.ndarray) -> np.ndarray | None:
        """Vectorized `includes`; None means every record is in."""
        if self.mode == "all-years":
            return None
        lo = self.census_year - self.span
        return (
            (citing_years == self.census_year)
            & (cited_years >= lo)
            & (cited_years <= self.census_year - 1)
        )

    def publication_years(self, corpus: "Corpus") -> tuple[int, ...]:
        if self.mode == "cited-window":
            return tuple(range(self.census_year - self.span, self.census_year))
        years: set[int] = set()
        for journal in corpus.journals.values():
            years.update(journal.articles_by_year)
        return tuple(sorted(years))

    def describe(self) -> str:
        if self.mode == "all-years":
            return "all-years"
        return f"census_year={self.census_year} span={self.span}"


@dataclass(frozen=True)
class CorpusArrays:
    """Columnar view of a corpus, for vectorized metric computation."""

    ids: tuple[str, ...]
    index: dict[str, int]
    citing_idx: np.ndarray
    cited_idx: np.ndarray
    citing_years: np.ndarray
    cited_years: np.ndarray
    counts: np.ndarray


@dataclass(frozen=True)
class Corpus:
    """Immutable set of journals plus merged citation records.

    `citations` maps (citing, cited, citing_year, cited_year) to the summed
    count.  Construction validates every invariant; instances are safe to
    share across threads.
    """

    journals: dict[str, Journal]
    citations: dict[tuple[str, str, int, int], int]

    def __post_init__(self):
        journals = self.journals
        for jid, journal in journals.items():
            if journal.id != jid:
                raise CorpusError(f"journal keyed {jid!r} carries id {journal.id!r}")
        for (citing, cited, citing_year, cited_year), count in self.citations.items():
            if citing not in journals:
                raise CorpusError(f"citation references unknown journal id {citing!r}")
            if cited not in journals:
                raise CorpusError(f"citation references unknown journal id {cited!r}")
            if not isinstance(count, int) or count < 1:
                raise CorpusError(
                    f"citation {citing}->{cited}: merged count must be a positive integer"
                )
            if cited_year > citing_year:
                raise CorpusError(
                    f"citation {citing}->{cited}: cited_year {cited_year} "
                    f"is after citing_year {citing_year}"
                )

    @classmethod
    def build(
        cls, journals: Iterable[Journal], records: Iterable[CitationRecord] = ()
    ) -> "Corpus":
        """Construct from journal objects and (possibly duplicated) records."""
        by_id: dict[str, Journal] = {}
        for journal in journals:
            if journal.id in by_id:
                raise CorpusError(f"duplicate journal id {journal.id!r}")
            by_id[journal.id] = journal
        merged: dict[tuple[str, str, int, int], int] = {}
        for record in records:
            key = record.key
            merged[key] = merged.get(key, 0) + record.count
        return cls(journals=by_id, citations=merged)

    def records(self) -> Iterator[CitationRecord]:
        for (citing, cited, citing_year, cited_year), count in self.citations.items():
            yield CitationRecord(citing, cited, citing_year, cited_year, count)

    @property
    def n_journals(self) -> int:
        return len(self.journals)

    def total_count(self) -> int:
        return sum(self.citations.values())

    def year_range(self) -> tuple[int, int] | None:
        """(min, max) over article years and citation years; None if no years at all."""
        years: set[int] = set()
        for journal in self.journals.values():
            years.update(journal.articles_by_year)
        for (_, _, citing_year, cited_year) in self.citations:
            years.add(citing_year)
            years.add(cited_year)
        if not years:
            return None
        return min(years), max(years)

    @cached_property
    def columnar(self) -> CorpusArrays:
        ids = tuple(sorted(self.journals))
        index = {jid: i for i, jid in enumerate(ids)}
        m = len(self.citations)
        citing_idx = np.empty(m, dtype=np.int64)
        cited_idx = np.empty(m, dtype=np.int64)
        citing_years = np.empty(m, dtype=np.int64)
        cited_years = np.empty(m, dtype=np.int64)
        counts = np.empty(m, dtype=np.int64)
        for i, ((citing, cited, citing_year, cited_year), count) in enumerate(
            self.citations.items()
        ):
            citing_idx[i] = index[citing]
            cited_idx[i] = index[cited]
            citing_years[i] = citing_year
            cited_years[i] = cited_year
            counts[i] = count
        return CorpusArrays(ids, index, citing_idx, cited_idx, citing_years, cited_years, counts)


def _check_header(row: list[str] | None, expected: list[str], what: str) -> None:
    if row != expected:
        raise CorpusError(
            f"{what} file must start with header {','.join(expected)!r}", line=1
        )


def parse_corpus(journals_source: IO[str], citations_source: IO[str]) -> Corpus:
    """Parse and validate the two CSV streams into a merged Corpus.

    Journal rows are `id,name,year,articles`, one per (journal, year); a row
    with empty year and articles declares a journal with no article data.
    Citation rows are `citing,cited,citing_year,cited_year,count`; duplicate
    keys are merged by summing counts.  Errors report the offending line.
    """
    journals: dict[str, Journal] = {}
    articles: dict[str, dict[int, int]] = {}
    names: dict[str, str] = {}
    seen_years: dict[str, set[int]] = {}

    jreader = csv.reader(journals_source)
    header = next(jreader, None)
    if header is not None:
        _check_header(header, JOURNALS_HEADER, "journals")
        for row in jreader:
            line = jreader.line_num
            if not row:
                continue
            if len(row) != 4:
                raise CorpusError(
                    f"journals row needs 4 fields, got {len(row)}", line=line
                )
            jid, name, year_s, articles_s = row
            if not jid:
                raise CorpusError("empty journal id", line=line)
            if jid in names:
                if names[jid] != name:
                    raise CorpusError(
                        f"journal {jid!r} listed with conflicting names "
                        f"{names[jid]!r} and {name!r}",
                        line=line,
                    )
            else:
                names[jid] = name
                articles[jid] = {}
                seen_years[jid] = set()
            if year_s == "" and articles_s == "":
                continue
            try:
                year = int(year_s)
                count = int(articles_s)
            except ValueError:
                raise CorpusError(
                    f"malformed year/articles fields {year_s!r},{articles_s!r}",
                    line=line,
                ) from None
            if count < 0:
                raise CorpusError(f"negative article count {count}", line=line)
            if year in seen_years[jid]:
                raise CorpusError(
                    f"duplicate journal id {jid!r} for year {year}", line=line
                )
            seen_years[jid].add(year)
            articles[jid][year] = count

    for jid, name in names.items():
        journals[jid] = Journal(id=jid, name=name, articles_by_year=articles[jid])

    # Map every id to its canonical string object so record keys share storage.
    canonical = {jid: jid for jid in journals}
    year_pool: dict[int, int] = {}
    citations: dict[tuple[str, str, int, int], int] = {}

    creader = csv.reader(citations_source)
    header = next(creader, None)
    if header is not None:
        _check_header(header, CITATIONS_HEADER, "citations")
        for row in creader:
            line = creader.line_num
            if not row:
                continue
            if len(row) != 5:
                raise CorpusError(
                    f"citations row needs 5 fields, got {len(row)}", line=line
                )
            citing_s, cited_s, citing_year_s, cited_year_s, count_s = row
            citing = canonical.get(citing_s)
            if citing is None:
                raise CorpusError(f"unknown journal id {citing_s!r}", line=line)
            cited = canonical.get(cited_s)
            if cited is None:
                raise CorpusError(f"unknown journal id {cited_s!r}", line=line)
            try:
                citing_year = int(citing_year_s)
                cited_year = int(cited_year_s)
                count = int(count_s)
            except ValueError:
                raise CorpusError(f"malformed numeric field in {row!r}", line=line) from None
            if count < 1:
                raise CorpusError(f"citation count must be >= 1, got {count}", line=line)
            if cited_year > citing_year:
                raise CorpusError(
                    f"cited_year {cited_year} is after citing_year {citing_year}",
                    line=line,
                )
            citing_year = year_pool.setdefault(citing_year, citing_year)
            cited_year = year_pool.setdefault(cited_year, cited_year)
            key = (citing, cited, citing_year, cited_year)
            citations[key] = citations.get(key, 0) + count

    return Corpus(journals=journals, citations=citations)


def load_corpus(journals_path, citations_path) -> Corpus:
    with open(journals_path, newline="", encoding="utf-8") as jf, open(
        citations_path, newline="", encoding="utf-8"
    ) as cf:
        return parse_corpus(jf, cf)


def dump_journals(corpus: Corpus, out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(JOURNALS_HEADER)
    for jid in sorted(corpus.journals):
        journal = corpus.journals[jid]
        if not journal.articles_by_year:
            writer.writerow([jid, journal.name, "", ""])
            continue
        for year in sorted(journal.articles_by_year):
            writer.writerow([jid, journal.name, year, journal.articles_by_year[year]])


def dump_citations(corpus: Corpus, out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CITATIONS_HEADER)
    for key in sorted(corpus.citations):
        citing, cited, citing_year, cited_year = key
        writer.writerow([citing, cited, citing_year, cited_year, corpus.citations[key]])


def write_corpus(corpus: Corpus, journals_path, citations_path) -> None:
    """Serialize deterministically; parse_corpus() of the output reproduces the corpus."""
    with open(journals_path, "w", newline="", encoding="utf-8") as jf:
        dump_journals(corpus, jf)
    with open(citations_path, "w", newline="", encoding="utf-8") as cf:
        dump_citations(corpus, cf)


def filter_to_scored(
    corpus: Corpus, required: "MetricVector"
) -> tuple[Corpus, tuple[str, ...]]:
    """Drop journals absent from `required`, and their citations.

    Returns the filtered corpus and the sorted ids that were removed.
    Idempotent; an empty result is legal.
    """
    keep = set(required.scores)
    removed = tuple(sorted(jid for jid in corpus.journals if jid not in keep))
    if not removed:
        return corpus, ()
    journals = {jid: j for jid, j in corpus.journals.items() if jid in keep}
    citations = {
        key: count
        for key, count in corpus.citations.items()
        if key[0] in keep and key[1] in keep
    }
    return Corpus(journals=journals, citations=citations), removed
