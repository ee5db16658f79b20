# NOTICE: This file is from mkdocstrings-python see NOTICE for details
"""Generate the API reference pages for clusterscope."""

from pathlib import Path

import mkdocs_gen_files

PACKAGE = Path("src", "clusterscope")
SKIPPED = {"__main__", "log"}

nav = mkdocs_gen_files.Nav()
mod_symbol = '<code class="doc-symbol doc-symbol-nav doc-symbol-module"></code>'

for path in sorted(PACKAGE.glob("*.py")):
    name = path.stem
    if name in SKIPPED or (name.startswith("_") and name != "__init__"):
        continue

    if name == "__init__":
        ident = "clusterscope"
        doc_path = Path("index.md")
        title = "clusterscope"
    else:
        ident = f"clusterscope.{name}"
        doc_path = Path(f"{name}.md")
        title = name

    nav[(f"{mod_symbol} {title}",)] = doc_path.as_posix()
    full_doc_path = Path("reference", doc_path)
    with mkdocs_gen_files.open(full_doc_path, "w") as fd:
        fd.write(f"::: {ident}\n")

    mkdocs_gen_files.set_edit_path(full_doc_path, Path("..", path))

with mkdocs_gen_files.open("reference/SUMMARY.txt", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
