"""Survey application.

Runs the full battery of checks over a configured set of quivers and emits
one JSON object per quiver.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from multiprocessing import Pool
import sys
from typing import Any, Dict, List, Tuple

# Installed
import orjson
import pillar.application
from pydantic import ValidationError
from tqdm import tqdm

# Local
from .banff import BanffSearch, FailureReport
from .catalog import UnknownCatalogEntry, catalog_entry
from .certificate import verify_certificate
from .config import SurveyConfig
from .const import CoverMode, StopPredicate
from .explore import find_acyclic_seed, find_covering_pair_seed
from .formats import parse_quiver
from .linalg import exchange_rank, is_full_rank
from .quiver import IceQuiver, QuiverError
from .structure import covering_pairs, structural_class
from .surface import SurfaceDescriptor, classify_surface

### CONSTANTS
### ============================================================================
SurveyTask = Tuple[str, IceQuiver, "SurfaceDescriptor | None", SurveyConfig]


### FUNCTIONS
### ============================================================================
def main():
    app = SurveyApplication()
    app.run()
    return app


def survey_quiver(task: SurveyTask) -> Dict[str, Any]:
    """Analyse one quiver.

    Returns:
        a JSON-ready record with structure, searches, Banff and classification results
    """
    name, q, surface, config = task
    budget = config.budget
    record: Dict[str, Any] = {
        "name": name,
        "vertices": q.n,
        "frozen": sorted(v + 1 for v in q.frozen),
        "structure": structural_class(q).as_dict(),
        "exchange_rank": exchange_rank(q),
        "full_rank": is_full_rank(q),
        "covering_pairs": [[a + 1, b + 1] for a, b in covering_pairs(q)],
        "acyclic_search": find_acyclic_seed(q, budget).verdict.value,
        "covering_pair_search": find_covering_pair_seed(q, budget).verdict.value,
    }

    reduced = config.reduced
    if reduced and config.stop != StopPredicate.ACYCLIC.value:
        record["banff"] = {
            "outcome": "skipped",
            "reason": f"reduced Banff does not support the {config.stop} stop predicate",
        }
    elif reduced and q.frozen:
        record["banff"] = {"outcome": "skipped", "reason": "quiver has frozen vertices"}
    else:
        search = BanffSearch(
            StopPredicate(config.stop),
            budget,
            config.strategy,
            mode=CoverMode.DELETE if reduced else CoverMode.FREEZE,
            name=name,
        )
        result = search.run(q, name)
        if isinstance(result, FailureReport):
            record["banff"] = {
                "outcome": "failure",
                "reason": result.reason.value,
                "where": result.where,
            }
        else:
            verdict = verify_certificate(result)
            record["banff"] = {
                "outcome": "certificate",
                "branches": len(result.branches),
                "leaves": len(result.leaves),
                "verified": verdict.accepted,
            }
            if not verdict.accepted:
                record["banff"]["rejection"] = str(verdict)

    if surface is not None:
        classification = classify_surface(surface)
        record["surface"] = {
            "verdict": classification.verdict.value,
            "reasons": classification.reasons,
        }
    return record


### CLASSES
### ============================================================================
class SurveyApplication(pillar.application.Application):
    """Survey a set of quivers from the catalog and from `.qvr` files."""

    application_name = "clusterscope-survey"

    default_config = {
        "survey": {
            "catalog": [],
            "files": {},
        },
    }

    config_model: SurveyConfig

    def get_argument_parser(self):
        parser = super().get_argument_parser()
        parser.add_argument(
            "-o", "--output", default=None, help="write records here instead of stdout"
        )
        parser.add_argument("--workers", type=int, default=None, help="override survey.workers")
        return parser

    def load_tasks(self) -> List[SurveyTask]:
        tasks: List[SurveyTask] = []
        for name in self.config_model.catalog:
            entry = catalog_entry(name)
            tasks.append((entry.name, entry.quiver, entry.surface, self.config_model))
        for name, path in self.config_model.files.items():
            self.vdebug(f"loading {name} from {path}")
            with open(path, encoding="utf8") as f:
                _, quiver = parse_quiver(f.read())
            tasks.append((name, quiver, None, self.config_model))
        return tasks

    ## Main
    ## -------------------------------------------------------------------------
    def main(self) -> int | None:
        self.info("clusterscope-survey starting")
        try:
            self.config_model = SurveyConfig(**self.config["survey"])
        except ValidationError:
            self.critical("Invalid survey config", exc_info=True)
            return 1
        if self.args.workers is not None:
            self.config_model.workers = max(1, self.args.workers)

        try:
            tasks = self.load_tasks()
        except (OSError, QuiverError, UnknownCatalogEntry) as error:
            self.critical(f"Failed to load quivers: {error}")
            return 1
        if not tasks:
            self.error("Nothing to survey: configure survey.catalog or survey.files")
            return 1
        self.info(f"surveying {len(tasks)} quivers with {self.config_model.workers} workers")

        records: List[Dict[str, Any]] = []
        progress = tqdm(total=len(tasks), unit="quiver", disable=not sys.stdout.isatty())
        if self.config_model.workers == 1:
            for task in tasks:
                records.append(survey_quiver(task))
                progress.update()
        else:
            with Pool(self.config_model.workers) as pool:
                for record in pool.imap(survey_quiver, tasks):
                    records.append(record)
                    progress.update()
        progress.close()

        lines = b"\n".join(orjson.dumps(record) for record in records) + b"\n"
        if self.args.output:
            with open(self.args.output, "wb") as f:
                f.write(lines)
        else:
            sys.stdout.write(lines.decode("utf8"))
        self.info("clusterscope-survey finished")
        return None
