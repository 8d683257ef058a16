"""Shared fixtures.  The two expensive ones are session-scoped: the bundled
eigenvalue table with its count reports, and the counts at the eight large
split primes with their squares."""

import pytest

from quinticmod.pointcount import count_and_extract
from quinticmod.verify import bundled_table

# the eight split rational primes of the printed large-prime table
TABLE_PRIMES = (101, 109, 149, 181, 211, 229, 239, 241)


@pytest.fixture(scope="session")
def bundled():
    """(EigenTable, reports) for the bundled data; about ten seconds."""
    return bundled_table(threads=1)


@pytest.fixture(scope="session")
def table_prime_reports():
    """Counts at p and p^2 for every p in TABLE_PRIMES; the slow fixture."""
    reports = {}
    for p in TABLE_PRIMES:
        for q in (p, p * p):
            reports[q] = count_and_extract(q, threads=1)
    return reports


@pytest.fixture(scope="session")
def full_csv(tmp_path_factory, bundled):
    """All bundled records exported to CSV, for external-import paths."""
    table, _ = bundled
    path = tmp_path_factory.mktemp("tables") / "complete.csv"
    lines = ["ideal_label,alpha_u,alpha_v,alpha_d"]
    for rec in table:
        a = rec.alpha
        lines.append(f"{rec.ideal.label()},{a.u},{a.v},{a.d}")
    path.write_text("\n".join(lines) + "\n")
    return path
