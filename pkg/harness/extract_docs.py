"""Extract the toolkit's method documentation into a structured corpus file.

Usage: python3 extract_docs.py [--stub] [--out corpus.json]

Introspects the `epanet` class (real EPyT if importable and --stub not
given, otherwise the bundled stub), emitting one record per public method:
name, signature (name plus argument list), and description (first
documentation block). Output order is sorted by name, so re-running is
byte-identical.
"""

import argparse
import inspect
import json
import os
import sys


def load_toolkit(force_stub):
    if not force_stub:
        try:
            import epyt

            return epyt.epanet, "epyt"
        except ImportError:
            pass
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    import watertool_stub

    return watertool_stub.epanet, "watertool_stub"


def method_signature(name, func):
    sig = inspect.signature(func)
    params = [p for p in sig.parameters.values() if p.name != "self"]
    rendered = []
    for p in params:
        if p.default is inspect.Parameter.empty:
            rendered.append(p.name)
        else:
            rendered.append("%s=%r" % (p.name, p.default))
    return "%s(%s)" % (name, ", ".join(rendered))


def first_doc_block(doc):
    if not doc:
        return ""
    paragraphs = [p.strip() for p in doc.strip().split("\n\n") if p.strip()]
    return paragraphs[0] if paragraphs else ""


def extract(cls):
    records = []
    for name, member in sorted(vars(cls).items()):
        if name.startswith("_") or not callable(member):
            continue
        description = first_doc_block(inspect.getdoc(member))
        if not description:
            continue
        records.append(
            {
                "name": name,
                "signature": method_signature(name, member),
                "description": description,
            }
        )
    return records


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--stub", action="store_true", help="force the bundled stub toolkit")
    parser.add_argument("--out", default="corpus.json")
    args = parser.parse_args()

    cls, label = load_toolkit(args.stub)
    records = extract(cls)
    if not records:
        print("no documented methods found", file=sys.stderr)
        return 1
    doc = {"source_label": label, "extracted_at": "", "docs": records}
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    print("extracted %d methods from %s" % (len(records), label), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
