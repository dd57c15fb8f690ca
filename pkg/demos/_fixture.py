"""Shared toy citation system for the demo scripts: three fields of 15
journals, two hub journals cited by everyone."""

import csv

import numpy as np

FIELDS = ["Acoustics", "Botany", "Criminology"]
TITLES = [f"{f} Journal {i:02d}" for f in FIELDS for i in range(15)]


def write_citation_matrix(path, seed=0):
    rng = np.random.default_rng(seed)
    popularity = np.array([5, 4, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], dtype=float)
    popularity /= popularity.sum()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["citing", "cited", "count"])
        for j, title in enumerate(TITLES):
            field = j // 15
            own = rng.choice(np.arange(field * 15, (field + 1) * 15), size=40, p=popularity)
            hubs = rng.choice([0, 15], size=8)
            cited, counts = np.unique(np.concatenate([own, hubs]), return_counts=True)
            for t, c in zip(cited, counts):
                if int(t) != j:
                    writer.writerow([title, TITLES[int(t)], int(c)])
    return TITLES


def tagged_download(path, journal_names):
    """Write a minimal tagged-format download with one SO line per record."""
    lines = []
    for name in journal_names:
        lines += ["PT J", f"SO {name.upper()}", "ER"]
    path.write_text("\n".join(lines) + "\nEF\n")
