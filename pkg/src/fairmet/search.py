"""Faceted and keyword search over published networks.

Facets are conjunctive: country, region substring, local environment,
seasonality (intersection with the derived season set) and date overlap.
Keywords match whole tokens, case-insensitively, across network name,
description, keywords, site names and sensor variables, scored by plain
term frequency. The engine keeps an immutable index per catalog revision;
commits swap in a new index, so queries never observe a half-built one.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Mapping, Optional, Sequence

from .countries import is_country_code
from .derive import derive_seasonality
from .model import DateRange, LocalEnvironment, Network, Season, Sensor, Site
from .store import CatalogSnapshot, CatalogStore

_TOKEN_RE = re.compile(r"[a-z0-9_]+")


class InvalidQueryError(ValueError):
    pass


@dataclass(frozen=True)
class SearchQuery:
    """Conjunction of optional facets; the empty query matches everything."""

    country: Optional[str] = None
    region: Optional[str] = None
    local_environment: Optional[LocalEnvironment] = None
    seasonality: Optional[frozenset[Season]] = None
    date_range: Optional[DateRange] = None
    keywords: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class LinkSummary:
    doi: Optional[str]
    title: str
    archive_url: str


@dataclass(frozen=True)
class SearchResult:
    network_id: str
    name: str
    country: str
    local_environment: LocalEnvironment
    coverage: DateRange
    site_count: int
    doi_links: tuple[LinkSummary, ...]
    score: float


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def validate_query(query: SearchQuery) -> None:
    """Reject malformed queries (unknown country, inverted date range)."""
    if query.country is not None and not is_country_code(query.country):
        raise InvalidQueryError(f"unknown country code {query.country!r}")
    if query.date_range is not None and not query.date_range.is_valid():
        raise InvalidQueryError(
            f"date range starts {query.date_range.start} after end {query.date_range.end}"
        )
    if query.seasonality is not None and not query.seasonality:
        raise InvalidQueryError("seasonality facet must not be an empty set")


def query_from_params(params: Mapping[str, object]) -> SearchQuery:
    """Build a query from URL-style parameters.

    Recognized names: country, region, env, season (repeatable or
    comma-separated), date_from, date_to, q (whitespace-separated terms).
    """
    def one(name: str) -> Optional[str]:
        value = params.get(name)
        if isinstance(value, (list, tuple)):
            value = value[-1] if value else None
        if value is None or str(value).strip() == "":
            return None
        return str(value).strip()

    country = one("country")
    env_raw = one("env")
    environment = None
    if env_raw is not None:
        try:
            environment = LocalEnvironment(env_raw)
        except ValueError:
            raise InvalidQueryError(f"unknown local environment {env_raw!r}") from None

    seasons_raw = params.get("season")
    if seasons_raw is None:
        seasons_raw = []
    elif not isinstance(seasons_raw, (list, tuple)):
        seasons_raw = [seasons_raw]
    season_terms: list[str] = []
    for chunk in seasons_raw:
        season_terms.extend(t for t in str(chunk).split(",") if t.strip())
    seasonality = None
    if season_terms:
        try:
            seasonality = frozenset(Season(t.strip()) for t in season_terms)
        except ValueError:
            raise InvalidQueryError(f"unknown season in {season_terms!r}") from None

    date_from, date_to = one("date_from"), one("date_to")
    date_range = None
    if date_from is not None or date_to is not None:
        try:
            start = date.fromisoformat(date_from) if date_from else date.min
            end = date.fromisoformat(date_to) if date_to else date.max
        except ValueError as exc:
            raise InvalidQueryError(f"malformed date: {exc}") from None
        date_range = DateRange(start=start, end=end)

    q = one("q")
    keywords = tuple(q.split()) if q else None
    query = SearchQuery(
        country=country.upper() if country else None,
        region=one("region"),
        local_environment=environment,
        seasonality=seasonality,
        date_range=date_range,
        keywords=keywords,
    )
    validate_query(query)
    return query


def network_matches(
    network: Network,
    sites: Sequence[Site],
    sensors: Sequence[Sensor],
    query: SearchQuery,
) -> bool:
    """Reference predicate for the conjunctive facet semantics."""
    if query.country is not None and network.country != query.country:
        return False
    if query.region is not None and query.region.lower() not in network.region.lower():
        return False
    if query.local_environment is not None and network.local_environment != query.local_environment:
        return False
    if query.seasonality is not None:
        if not (derive_seasonality(network.operational_coverage) & query.seasonality):
            return False
    if query.date_range is not None:
        if not network.operational_coverage.overlaps(query.date_range):
            return False
    if query.keywords:
        tokens = _document_tokens(network, sites, sensors)
        if not any(term.lower() in tokens for term in query.keywords):
            return False
    return True


def _document_tokens(
    network: Network, sites: Iterable[Site], sensors: Iterable[Sensor]
) -> Counter:
    tokens: Counter = Counter()
    tokens.update(tokenize(network.name))
    tokens.update(tokenize(network.description))
    for keyword in network.keywords:
        tokens.update(tokenize(keyword))
    for site in sites:
        tokens.update(tokenize(site.name))
    for sensor in sensors:
        tokens.update(tokenize(sensor.variable))
    return tokens


@dataclass(frozen=True)
class IndexStats:
    documents: int
    tokens: int
    revision: int


@dataclass(frozen=True)
class _Doc:
    network: Network
    site_count: int
    seasons: frozenset[Season]
    tokens: Counter
    links: tuple[LinkSummary, ...]


class _Index:
    """Immutable index generation over one catalog snapshot."""

    def __init__(self, docs: dict[str, _Doc], revision: int) -> None:
        self.docs = docs
        self.revision = revision
        self.by_country: dict[str, set[str]] = {}
        self.by_env: dict[LocalEnvironment, set[str]] = {}
        self.by_season: dict[Season, set[str]] = {}
        self.token_postings: dict[str, dict[str, int]] = {}
        for nid, doc in docs.items():
            self.by_country.setdefault(doc.network.country, set()).add(nid)
            self.by_env.setdefault(doc.network.local_environment, set()).add(nid)
            for season in doc.seasons:
                self.by_season.setdefault(season, set()).add(nid)
            for token, count in doc.tokens.items():
                self.token_postings.setdefault(token, {})[nid] = count

    def stats(self) -> IndexStats:
        return IndexStats(
            documents=len(self.docs),
            tokens=len(self.token_postings),
            revision=self.revision,
        )


def _doc_for(snapshot: CatalogSnapshot, network_id: str) -> _Doc:
    network = snapshot.networks[network_id]
    sites = snapshot.sites_of(network_id)
    sensors = snapshot.sensors_of_network(network_id)
    links = snapshot.links_of(network_id)
    return _Doc(
        network=network,
        site_count=len(sites),
        seasons=derive_seasonality(network.operational_coverage)
        if network.operational_coverage.is_valid() else frozenset(),
        tokens=_document_tokens(network, sites, sensors),
        links=tuple(
            LinkSummary(doi=l.doi, title=l.title, archive_url=l.archive_url) for l in links
        ),
    )


class SearchEngine:
    """Search facade bound to a store; reindexes incrementally on commit."""

    def __init__(self, store: CatalogStore) -> None:
        self._store = store
        self._index = self._build(store.snapshot())
        store.add_listener(self._on_commit)

    def _build(self, snapshot: CatalogSnapshot) -> _Index:
        docs = {nid: _doc_for(snapshot, nid) for nid in snapshot.visible_network_ids()}
        return _Index(docs, snapshot.revision)

    def _on_commit(self, snapshot: CatalogSnapshot, changed: set[str]) -> None:
        visible = set(snapshot.visible_network_ids())
        docs = dict(self._index.docs)
        for nid in changed:
            if nid in visible:
                docs[nid] = _doc_for(snapshot, nid)
            else:
                docs.pop(nid, None)
        self._index = _Index(docs, snapshot.revision)

    def rebuild_index(self, snapshot: Optional[CatalogSnapshot] = None) -> IndexStats:
        """Full rebuild from scratch (audit path); returns index statistics."""
        self._index = self._build(snapshot if snapshot is not None else self._store.snapshot())
        return self._index.stats()

    def stats(self) -> IndexStats:
        return self._index.stats()

    def search(self, query: SearchQuery) -> list[SearchResult]:
        """Published networks satisfying every supplied facet, ranked."""
        validate_query(query)
        index = self._index
        candidates: set[str] = set(index.docs)
        if query.country is not None:
            candidates &= index.by_country.get(query.country, set())
        if query.local_environment is not None:
            candidates &= index.by_env.get(query.local_environment, set())
        if query.seasonality is not None:
            matching: set[str] = set()
            for season in query.seasonality:
                matching |= index.by_season.get(season, set())
            candidates &= matching

        scores: dict[str, float] = {}
        if query.keywords:
            matched: set[str] = set()
            for term in query.keywords:
                postings = index.token_postings.get(term.lower(), {})
                for nid, count in postings.items():
                    scores[nid] = scores.get(nid, 0.0) + count
                matched |= postings.keys()
            candidates &= matched

        results = []
        for nid in candidates:
            doc = index.docs[nid]
            if query.region is not None and query.region.lower() not in doc.network.region.lower():
                continue
            if query.date_range is not None and not doc.network.operational_coverage.overlaps(query.date_range):
                continue
            results.append(SearchResult(
                network_id=nid,
                name=doc.network.name,
                country=doc.network.country,
                local_environment=doc.network.local_environment,
                coverage=doc.network.operational_coverage,
                site_count=doc.site_count,
                doi_links=doc.links,
                score=scores.get(nid, 0.0),
            ))
        results.sort(key=lambda r: (-r.score, r.name, r.network_id))
        return results
