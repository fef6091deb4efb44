"""Built-in prediction tasks and their prompt description strings.

Descriptions are shipped data and feed the prompt templates verbatim.
Two regression descriptions (freesolv, lipophilicity) appear swapped
relative to what the dataset names suggest; they are shipped as-is with
a ``description_flag`` documenting the suspicion, since which wording
was actually used upstream is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field

CLASSIFICATION = "classification"
REGRESSION = "regression"


@dataclass(frozen=True)
class TaskSpec:
    name: str
    kind: str
    description: str
    synthesis_prefix: str = ""  # e.g. "if " for the named binary endpoints
    inference_prefix: str = ""  # e.g. "it is related to " for panel tasks
    persona: str = "chemist"  # "chemist" | "biologist"
    no_3d: bool = False
    description_flag: str = ""

    def __post_init__(self):
        if self.kind not in (CLASSIFICATION, REGRESSION):
            raise ValueError(f"unknown task kind {self.kind!r}")
        if not self.description:
            raise ValueError("task description must be non-empty")
        if self.no_3d and self.kind != REGRESSION:
            raise ValueError("no_3d tasks must be regression tasks")
        if self.persona not in ("chemist", "biologist"):
            raise ValueError(f"unknown persona {self.persona!r}")

    def synthesis_description(self) -> str:
        return self.synthesis_prefix + self.description

    def inference_description(self) -> str:
        return self.inference_prefix + self.description


_TOX21_SUBTASKS = {
    "nr-ar": ("androgen receptor", "nuclear receptor (NR)"),
    "nr-ar-lbd": ("androgen receptor ligand-binding domain", "nuclear receptor (NR)"),
    "nr-ahr": ("aryl hydrocarbon receptor", "nuclear receptor (NR)"),
    "nr-aromatase": ("aromatase", "nuclear receptor (NR)"),
    "nr-er": ("estrogen receptor", "nuclear receptor (NR)"),
    "nr-er-lbd": ("estrogen receptor ligand-binding domain", "nuclear receptor (NR)"),
    "nr-ppar-gamma": ("peroxisome proliferator activated receptor", "nuclear receptor (NR)"),
    "sr-are": (
        "nuclear factor (erythroid- derived 2)-like 2 antioxidant responsive element",
        "stress response (SR)",
    ),
    "sr-atad5": ("genotoxicity indicated by ATAD5", "stress response (SR)"),
    "sr-hse": ("heat shock factor response element", "stress response (SR)"),
    "sr-mmp": ("mitochondrial membrane potential", "stress response (SR)"),
    "sr-p53": ("DNA damage p53-pathway", "stress response (SR)"),
}

_SIDER_SUBTASKS = (
    "hepatobiliary disorders",
    "metabolism and nutrition disorders",
    "product issues",
    "eye disorders",
    "investigations",
    "musculoskeletal and connective tissue disorders",
    "gastrointestinal disorders",
    "social circumstances",
    "immune system disorders",
    "reproductive system and breast disorders",
    "neoplasms benign, malignant and unspecified (incl cysts and polyps)",
    "general disorders and administration site conditions",
    "endocrine disorders",
    "surgical and medical procedures",
    "vascular disorders",
    "blood and lymphatic system disorders",
    "skin and subcutaneous tissue disorders",
    "congenital, familial and genetic disorders",
    "infections and infestations",
    "respiratory, thoracic and mediastinal disorders",
    "psychiatric disorders",
    "renal and urinary disorders",
    "pregnancy, puerperium and perinatal conditions",
    "ear and labyrinth disorders",
    "cardiac disorders",
    "nervous system disorders",
    "injury, poisoning and procedural complications",
)

_QM9_SUBTASKS = {
    "mu": "dipole moment (Mu) of a molecule",
    "alpha": "Isotropic polarizability of a molecule",
    "r2": "electronic spatial extent of a molecule",
    "zpve": "Zero-Point Vibrational Energy (ZPVE) of a molecule",
    "cv": "the heat capacity at constant volume of a molecule",
    "gap": "the HUMO-LUMO gap of a molecule",
    "homo": "the highest occupied molecular orbital (HOMO) energy of a molecule",
    "lumo": "Lowest Unoccupied Molecular Orbital (LUMO) energy of a molecule",
    "u0": "internal energy at absolute zero temperature (0 Kelvin), U_0, of a molecule",
    "u": "internal energy of a molecule at a specific temperature, specifically at "
    "298.15 Kelvin (approximately room temperature), (U) of a molecule",
    "h": "enthalpy of the molecule at a specific temperature, specifically at "
    "298.15 Kelvin (approximately room temperature), (U) of a molecule",
    "g": "Gibbs free energy of the molecule at a specific temperature, specifically at "
    "298.15 Kelvin (approximately room temperature), (U) of a molecule",
}


def _build_tasks() -> dict[str, TaskSpec]:
    tasks: dict[str, TaskSpec] = {}

    def add(spec: TaskSpec):
        tasks[spec.name] = spec

    add(
        TaskSpec(
            name="bbbp",
            kind=CLASSIFICATION,
            description="a molecule is blood brain barrier permeable (BBBP)",
            synthesis_prefix="if ",
        )
    )
    add(
        TaskSpec(
            name="clintox",
            kind=CLASSIFICATION,
            description="a molecule will be approved by the FDA",
            synthesis_prefix="if ",
        )
    )
    add(
        TaskSpec(
            name="bace",
            kind=CLASSIFICATION,
            description="a molecule can inhibit human β -secretase 1(BACE-1)",
            synthesis_prefix="if ",
        )
    )
    add(
        TaskSpec(
            name="hiv",
            kind=CLASSIFICATION,
            description="a molecule can inhibit HIV replication",
            synthesis_prefix="if ",
        )
    )
    for slug, (receptor, pathway) in _TOX21_SUBTASKS.items():
        add(
            TaskSpec(
                name=f"tox21-{slug}",
                kind=CLASSIFICATION,
                description=(
                    f"the toxicity activity of a molecule against the {receptor} "
                    f"in the {pathway} signalling pathway"
                ),
                inference_prefix="it is related to ",
            )
        )
    for subtask in _SIDER_SUBTASKS:
        slug = (
            subtask.replace(",", "")
            .replace("(", "")
            .replace(")", "")
            .replace(" ", "-")
        )
        add(
            TaskSpec(
                name=f"sider-{slug}",
                kind=CLASSIFICATION,
                description=f"the side-effect activity of a molecule in causing {subtask}",
                inference_prefix="it is related to ",
            )
        )
    add(
        TaskSpec(
            name="esol",
            kind=REGRESSION,
            description="the water solubility data (log solubility in mols per litre)",
        )
    )
    add(
        TaskSpec(
            name="freesolv",
            kind=REGRESSION,
            description="the octanol/water distribution coefficient (logD at pH 7.4)",
            description_flag="shipped wording may be swapped with the lipophilicity task",
        )
    )
    add(
        TaskSpec(
            name="lipophilicity",
            kind=REGRESSION,
            description="the hydration free energy of a molecule in water",
            description_flag="shipped wording may be swapped with the freesolv task",
        )
    )
    for slug, description in _QM9_SUBTASKS.items():
        add(
            TaskSpec(
                name=f"qm9-{slug}",
                kind=REGRESSION,
                description=description,
                no_3d=True,
            )
        )
    return tasks


TASKS: dict[str, TaskSpec] = _build_tasks()


def get_task(name: str) -> TaskSpec:
    try:
        return TASKS[name]
    except KeyError:
        raise KeyError(f"unknown task {name!r}; known tasks: {sorted(TASKS)}") from None


def list_tasks() -> list[TaskSpec]:
    return list(TASKS.values())
