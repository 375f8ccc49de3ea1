"""Run every catalog check and list what did not pass as printed.

Run: python demos/catalog_summary.py
"""
from collections import defaultdict

from g2forms.catalog import load_catalog
from g2forms.catalog.report import header
from g2forms.catalog.verify import PASS, verify_catalog

results = verify_catalog(load_catalog())
print(header(results))
by_status = defaultdict(list)
for r in results:
    if r.status != PASS:
        by_status[r.status].append(f"{r.entry}/{r.check}")
for status, items in sorted(by_status.items()):
    print(f"{status}: {', '.join(items)}")
