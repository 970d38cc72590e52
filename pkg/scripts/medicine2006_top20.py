"""Side-by-side view of the bundled 2006 medicine top-20 files.

Prints each journal with its rank under the three bundled metrics, then
the pairwise correlations and the citation concentration at the top of
the table.
"""

import argparse
from pathlib import Path

from citerank.cli import load_metric_file
from citerank.compare import compare_metrics, rank

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
METRICS = ("eigenfactor", "total_citations", "impact_factor")
FILES = {
    "eigenfactor": "top20_medicine2006_eigenfactor.json",
    "total_citations": "top20_medicine2006_citations.json",
    "impact_factor": "top20_medicine2006_impact_factor.json",
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="rank table and correlations for the bundled 2006 medicine top 20"
    )
    parser.add_argument("--data-dir", type=Path, default=DATA_DIR)
    args = parser.parse_args(argv)

    vectors = {
        name: load_metric_file(args.data_dir / filename)
        for name, filename in FILES.items()
    }
    ranks = {
        name: {row.journal: int(row.rank) for row in rank(vector, "min").rows}
        for name, vector in vectors.items()
    }

    eigen = vectors["eigenfactor"]
    print(f"{'journal':<22} {'eigen':>8} {'rank':>4} {'cites':>7} {'rank':>4} {'IF':>7} {'rank':>4}")
    for row in rank(eigen, "min").rows:
        jid = row.journal
        print(
            f"{jid:<22} {eigen.scores[jid]:>8.4f} {ranks['eigenfactor'][jid]:>4}"
            f" {vectors['total_citations'].scores[jid]:>7.0f} {ranks['total_citations'][jid]:>4}"
            f" {vectors['impact_factor'].scores[jid]:>7.3f} {ranks['impact_factor'][jid]:>4}"
        )

    print()
    for i, name_x in enumerate(METRICS):
        for name_y in METRICS[i + 1 :]:
            report = compare_metrics(vectors[name_x], vectors[name_y])
            print(
                f"{name_x} vs {name_y}: spearman {report.spearman_rho:.4f},"
                f" pearson(log10) {report.pearson_log_rho:.4f}, n {report.n}"
            )

    print()
    report = compare_metrics(vectors["total_citations"], vectors["eigenfactor"])
    for k, share in report.concentration:
        print(f"top {k:>2} of these 20 hold {share:.1%} of their citations")


if __name__ == "__main__":
    main()
