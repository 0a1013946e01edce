"""
Main pipeline service that coordinates training, classification, evaluation and data generation
"""
import logging
import time
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from ..classifier.ensemble import Ensemble
from ..core.errors import DataFormatError
from ..dissimilarity.space import dissimilarity_matrix
from ..evaluation.embedding import embed_dissimilarity
from ..evaluation.experiments import evaluate_ensemble
from ..evaluation.information import weight_density
from ..evaluation.metrics import roc_auc
from ..optimizer.training import TrainingOutcome, train_occ
from ..preprocessing.datasets import NON_TARGET, TARGET, LabeledSet
from ..preprocessing.faults import make_fault_problem
from ..preprocessing.normalization import apply_stats, fit_stats, normalized_schema
from ..preprocessing.synthetic import SyntheticSpec, generate_gaussian_clusters, plane_schema
from ..schemas.features import FeatureSchema
from ..schemas.reports import (
    ClassificationRow,
    DensityRow,
    EmbeddingRow,
    EvaluationRow,
    RocRow,
    RunHeader,
    TraceRow,
)
from ..schemas.run_config import RunConfig, config_hash
from ..schemas.stats import NormalizationStats
from ..storage.file_handler import (
    load_ensemble,
    load_schema,
    load_stats,
    read_rows,
    save_ensemble,
    save_labeled_set,
    save_schema,
    save_stats,
    write_report,
)

logger = logging.getLogger(__name__)

MODEL_FILE = "model.json"
STATS_FILE = "stats.json"


class OccPipelineService:
    """Runs one train / classify / evaluate / synth request and writes its artifacts"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.output_dir = Path(config.output.dir)
        self.header = RunHeader(config_hash=config_hash(config), seed=config.seed)

    def _path(self, name: str) -> Path:
        return self.output_dir / name

    def _labeled(self, path: str, schema: FeatureSchema, stats: Optional[NormalizationStats]) -> LabeledSet:
        rows, labels = read_rows(path, schema)
        if stats is None:
            stats = fit_stats(schema, rows)
        return LabeledSet(apply_stats(schema, rows, stats), labels)

    def train(self) -> Dict:
        """
        Fit normalization on the training targets, synthesize one ensemble per k
        and keep the best.

        Returns:
            Dictionary with training results
        """
        data = self.config.data
        logger.info(f"Starting training (k {self.config.model.k_min}..{self.config.model.k_max}, seed {self.config.seed})")
        start_time = time.perf_counter()

        schema = load_schema(data.schema_path)
        train_rows, train_labels = read_rows(data.train, schema)
        if np.any(train_labels == NON_TARGET):
            logger.warning(f"Dropping {int(np.sum(train_labels == NON_TARGET))} non-target rows from the training set")
            train_rows = [r for r, y in zip(train_rows, train_labels) if y == TARGET]
        if not train_rows:
            raise DataFormatError(f"{data.train}: no target rows to train on")
        stats = load_stats(data.stats) if data.stats else fit_stats(schema, train_rows)
        train_patterns = apply_stats(schema, train_rows, stats)
        validation = self._labeled(data.validation, schema, stats)

        outcome = train_occ(self.config.ga, self.config.model, schema, train_patterns, validation, self.config.seed, stats)

        results = {
            "mode": "train",
            "k": outcome.k,
            "validation_accuracy": next(r.validation_accuracy for r in outcome.rows if r.selected),
            "validation_fe": next(r.validation_fe for r in outcome.rows if r.selected),
            "n_train": len(train_patterns),
            "n_validation": len(validation),
            "model": str(self._path(MODEL_FILE)),
        }

        if data.test:
            test = self._labeled(data.test, schema, stats)
            self._test_auc_per_k(outcome, test)

        save_ensemble(self._path(MODEL_FILE), outcome.ensemble, self.header)
        save_stats(self._path(STATS_FILE), stats, self.header)
        write_report(self._path("k_selection.csv"), outcome.rows, self.header)
        self._write_traces(outcome)
        self._write_weight_density(outcome.ensemble)
        everything = LabeledSet.of_targets(train_patterns).concat(validation)
        self._write_embedding(outcome.ensemble, everything)

        total_time = time.perf_counter() - start_time
        logger.info(f"""
            Training Results:
            - Selected k: {results['k']}
            - Validation accuracy: {results['validation_accuracy']:.4f}
            - Validation fuzzy entropy: {results['validation_fe']:.4f}
            - Total time: {total_time:.2f}s
            """)
        return results

    def _test_auc_per_k(self, outcome: TrainingOutcome, test: LabeledSet) -> None:
        if np.unique(test.labels).size < 2:
            logger.warning("Test set holds a single class; per-k AUC skipped")
            return
        for row in outcome.rows:
            scores = outcome.ensembles[row.k].memberships(test.patterns)
            row.test_auc = roc_auc(scores, test.labels).auc

    def _write_traces(self, outcome: TrainingOutcome) -> None:
        rows: List[TraceRow] = []
        for k, trace in sorted(outcome.traces.items()):
            for g, (f, h) in enumerate(zip(trace.fitness, trace.weight_entropy)):
                rows.append(TraceRow(k=k, generation=g, fitness=f, weight_entropy=h))
        write_report(self._path("ga_trace.csv"), rows, self.header, row_type=TraceRow)

    def _write_weight_density(self, ensemble: Ensemble) -> None:
        grid, density = weight_density(ensemble.weights)
        rows = [DensityRow(weight=float(x), density=float(y)) for x, y in zip(grid, density)]
        write_report(self._path("weight_density.csv"), rows, self.header)

    def _write_embedding(self, ensemble: Ensemble, data: LabeledSet) -> None:
        unit = np.ones(ensemble.schema.arity)
        D = dissimilarity_matrix(data.patterns, unit, ensemble.chosen.normalizer, ensemble.schema)
        coords = embed_dissimilarity(D)
        rows = [EmbeddingRow(x=float(x), y=float(y), label=int(label)) for (x, y), label in zip(coords, data.labels)]
        write_report(self._path("embedding.csv"), rows, self.header)

    def classify(self) -> Dict:
        """
        Classify raw records with a saved model; the model file is only read.

        Returns:
            Dictionary with decision counts
        """
        data = self.config.data
        ensemble = load_ensemble(data.model)
        schema = ensemble.schema
        stats = ensemble.chosen.stats
        rows, _ = read_rows(data.input, schema)
        if stats is None:
            stats = fit_stats(schema, rows)
        patterns = apply_stats(schema, rows, stats)
        decisions = ensemble.decide(patterns)

        report = [
            ClassificationRow(row=i, label=d.hard, membership=d.membership, cluster=d.cluster, dissimilarity=d.dissimilarity)
            for i, d in enumerate(decisions)
        ]
        write_report(self._path("classification.csv"), report, self.header, row_type=ClassificationRow)
        accepted = sum(d.hard for d in decisions)
        logger.info(f"Classified {len(decisions)} records: {accepted} targets, {len(decisions) - accepted} rejected")
        return {
            "mode": "classify",
            "n": len(decisions),
            "targets": accepted,
            "nontargets": len(decisions) - accepted,
            "report": str(self._path("classification.csv")),
        }

    def evaluate(self) -> Dict:
        """
        Test-set confusion metrics, ROC curve and fuzzy entropy of a saved model.

        Returns:
            Dictionary with the evaluation metrics
        """
        data = self.config.data
        ensemble = load_ensemble(data.model)
        schema = ensemble.schema
        test = self._labeled(data.test, schema, ensemble.chosen.stats)
        assessment = evaluate_ensemble(ensemble, test)
        counts, metrics = assessment.counts, assessment.metrics
        row = EvaluationRow(
            n=counts.total,
            tp=counts.tp,
            fp=counts.fp,
            tn=counts.tn,
            fn=counts.fn,
            fpr=metrics.fpr,
            recall=metrics.recall,
            precision=metrics.precision,
            accuracy=metrics.accuracy,
            auc=assessment.auc,
            fe=assessment.fe,
            flags=";".join(metrics.flags),
        )
        write_report(self._path("evaluation.csv"), [row], self.header)
        if assessment.auc is not None:
            curve = roc_auc(assessment.memberships, test.labels)
            write_report(
                self._path("roc.csv"),
                [RocRow(fpr=float(f), tpr=float(t)) for f, t in zip(curve.fpr, curve.tpr)],
                self.header,
            )
        logger.info(f"Evaluation: accuracy {metrics.accuracy:.4f}, FPR {metrics.fpr:.4f}, AUC {assessment.auc}")
        return {"mode": "evaluate", **row.model_dump()}

    def synth(self) -> Dict:
        """
        Write a generated problem as schema + train / validation / test datasets.

        Patterns are written already normalized, with a schema whose numeric
        features carry scaling 'none', so loading them back is the identity.
        """
        cfg = self.config.synth
        seed = self.config.seed
        n_nontarget = int(round(cfg.n_train / cfg.ratio)) if cfg.ratio else cfg.n_nontarget
        if cfg.kind == "gaussian":
            schema = plane_schema()
            spec = SyntheticSpec(
                spreads=[cfg.spread] * 3,
                n_train=cfg.n_train,
                n_validation=cfg.n_validation,
                n_test=cfg.n_test,
                n_nontarget=n_nontarget,
                seed=seed,
            )
            problem = generate_gaussian_clusters(spec)
        else:
            ratio = cfg.ratio or (cfg.n_train / n_nontarget if n_nontarget else 0.0)
            raw_schema, stats, problem = make_fault_problem(cfg.n_train, cfg.n_validation, cfg.n_test, ratio, seed)
            schema = normalized_schema(raw_schema)
            save_stats(self._path("fit_stats.json"), stats, self.header)

        paths = {name: self._path(f"{name}.jsonl") for name in ("train", "validation", "test")}
        save_schema(self._path("schema.json"), schema, self.header)
        save_labeled_set(paths["train"], schema, problem.train, self.header)
        save_labeled_set(paths["validation"], schema, problem.validation, self.header)
        save_labeled_set(paths["test"], schema, problem.test, self.header)
        logger.info(f"Generated {cfg.kind} problem in {self.output_dir}")
        return {
            "mode": "synth",
            "kind": cfg.kind,
            "schema": str(self._path("schema.json")),
            **{name: str(path) for name, path in paths.items()},
            "n_train": len(problem.train),
            "n_validation": len(problem.validation),
            "n_test": len(problem.test),
        }
