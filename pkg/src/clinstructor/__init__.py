"""Turn free-text admission notes into structured question-answer records and
train an interpretable additive classifier on them.

Pipeline stages: feature identification (candidate questions from an LLM),
clustering and top-K selection, feature extraction (answering the K questions
per note), and an additive per-question model with exact per-feature
attribution.
"""

from clinstructor.corpus import (
    AdmissionNote,
    DatasetSplits,
    balanced_subsample,
    load_notes,
    resolve_splits,
    sample_identification_notes,
)
from clinstructor.synthetic import SyntheticAttribute, SyntheticSpec, generate_synthetic_corpus
from clinstructor.gateway import ChatRequest, ChatResponse, LLMGateway
from clinstructor.identify import CandidatePool, FeatureCandidate, normalize_key, run_identification
from clinstructor.clustering import (
    FeatureCluster,
    QuestionSet,
    apply_review,
    cluster_candidates,
    rank_and_select,
    representative_question,
)
from clinstructor.extraction import StructuredRecord, effective_feature_count, run_extraction
from clinstructor.encoding import EncoderConfig, AnswerHashingEncoder, encode_answer
from clinstructor.model import AdditiveModel, AdditiveAnswerClassifier, TrainConfig, predict, train
from clinstructor.metrics import Metrics, auc_roc

__version__ = "0.1.0"

__all__ = [
    "AdmissionNote",
    "AdditiveAnswerClassifier",
    "AdditiveModel",
    "AnswerHashingEncoder",
    "CandidatePool",
    "ChatRequest",
    "ChatResponse",
    "DatasetSplits",
    "EncoderConfig",
    "FeatureCandidate",
    "FeatureCluster",
    "LLMGateway",
    "Metrics",
    "QuestionSet",
    "StructuredRecord",
    "SyntheticAttribute",
    "SyntheticSpec",
    "TrainConfig",
    "apply_review",
    "auc_roc",
    "balanced_subsample",
    "cluster_candidates",
    "effective_feature_count",
    "encode_answer",
    "generate_synthetic_corpus",
    "load_notes",
    "normalize_key",
    "predict",
    "rank_and_select",
    "representative_question",
    "resolve_splits",
    "run_extraction",
    "run_identification",
    "sample_identification_notes",
    "train",
]
