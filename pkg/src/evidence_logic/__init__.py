"""Model checking, model search and translations for logics of evidence, knowledge,
belief and knowability."""

from .errors import (BoundError, EvidenceLogicError, FormulaSyntaxError, LanguageError,
                     ModelError, ScenarioError)
from .syntax import parse, to_text, subformulas
from .models import (DoxasticScenario, EvidenceModel, RelationalModel, Scenario, check_e1,
                     check_e2, coherence_set, make_scenario)
from .checker import Evaluator, explain, holds, truth_set
from .belief import ladder, least_e2_superset
from .interaction import InteractionModel

__all__ = [
    "BoundError", "EvidenceLogicError", "FormulaSyntaxError", "LanguageError", "ModelError",
    "ScenarioError", "parse", "to_text", "subformulas", "DoxasticScenario", "EvidenceModel",
    "RelationalModel", "Scenario", "check_e1", "check_e2", "coherence_set", "make_scenario",
    "Evaluator", "explain", "holds", "truth_set", "ladder", "least_e2_superset",
    "InteractionModel",
]
