"""A starter keyphrase catalog for open-source developer communities.

These rules cover the usual arc of community learning: a newcomer
observes and asks, makes contact, practices under guidance, and
eventually contributes and reviews. The phrases are deliberately
plain; the point of shipping them is to give users something concrete
to inspect, run, and replace with vocabulary mined from their own
channels. Export with the seed-catalog command.
"""

from __future__ import annotations

from .catalog import Catalog, CatalogRule

# (phase, gl_key, state, lc_key, activity, role)
_RULES = (
    # Newcomers watching and asking before first contact.
    ("Initiation", "anyone know", "Observation", "how to", "Formulate Question", "Novice"),
    ("Initiation", "anyone know", "Observation", "anyone", "Identify Expert", "Novice"),
    ("Initiation", "anyone know", "Observation", "comment", "Comment Post", "Novice"),
    ("Initiation", "anyone know", "Observation", "post", "Post Message", "Novice"),
    ("Initiation", "new to", "Observation", "where do i start", "Formulate Question", "Novice"),
    ("Initiation", "i have a question", "Observation", "question", "Post Question", "Novice"),
    # Reaching out to a knowledge provider.
    ("Initiation", "can you help", "ContactEstablishment", "help me", "Contact Expert", "Novice"),
    ("Initiation", "can you help", "ContactEstablishment", "details", "Send Detailed Request", "Novice"),
    ("Initiation", "please help", "ContactEstablishment", "help", "Contact Expert", "Novice"),
    # Providers noticing and answering first contact.
    ("Initiation", "i can help", "ContactEstablishment", "help", "Contact Novice", "Expert"),
    ("Initiation", "i can help", "ContactEstablishment", "comment", "Comment Post", "Expert"),
    ("Initiation", "have you tried", "Observation", "read", "Read Messages", "Expert"),
    ("Initiation", "have you tried", "Observation", "post", "Read Post", "Expert"),
    ("Initiation", "looking at", "Observation", "code", "Read Source Code", "Expert"),
    # Guided back-and-forth once a thread is underway.
    ("Progression", "try this", "Guidance", "reply", "Send Reply", "Expert"),
    ("Progression", "try this", "Guidance", "feedback", "Send Feedback", "Expert"),
    ("Progression", "as i suggested", "Guidance", "thread", "Review Thread Posts", "Expert"),
    ("Progression", "as i suggested", "Guidance", "your code", "Review Thread Code", "Expert"),
    ("Progression", "did you check", "Guidance", "question", "Reply Posted Question", "Expert"),
    ("Progression", "did you check", "Guidance", "bug", "Report Bugs", "Expert"),
    ("Progression", "good catch", "Guidance", "comment", "Comment On Code", "Expert"),
    ("Progression", "when i run", "Practice", "code", "Run Source Code", "Expert"),
    ("Progression", "when i run", "Practice", "trace", "Analyse Source Code", "Expert"),
    # The learner exercising new skills.
    ("Progression", "it works", "Practice", "thanks", "Provide Feedback", "Novice"),
    ("Progression", "still stuck", "Practice", "question", "Post Questions", "Novice"),
    ("Progression", "still stuck", "Practice", "reply", "Reply Posted Questions", "Novice"),
    ("Progression", "i tried", "Practice", "code", "Analyse Source Code", "Novice"),
    ("Progression", "i tried", "Practice", "comment", "Comment On Code", "Novice"),
    ("Progression", "i tried", "Practice", "bug", "Report Bugs", "Novice"),
    # Contributions once skills have matured.
    ("Maturation", "i committed", "Contribution", "code", "Submit Code", "Novice"),
    ("Maturation", "i committed", "Contribution", "docs", "Submit Documentation", "Novice"),
    ("Maturation", "i committed", "Contribution", "fix", "Fix Bugs", "Novice"),
    ("Maturation", "merge request", "Contribution", "patch", "Write Source Code", "Novice"),
    ("Maturation", "merge request", "Contribution", "refactor", "Modify Source Code", "Novice"),
    ("Maturation", "bug report", "Contribution", "bug", "Submit Bug Report", "Novice"),
    # Review traffic in both directions.
    ("Maturation", "what do you think", "Review", "suggestion", "Give Suggestion", "Novice"),
    ("Maturation", "what do you think", "Review", "comment", "Post Comment On Code", "Novice"),
    ("Maturation", "looks good", "Review", "review", "Review Source Code", "Expert"),
    ("Maturation", "looks good", "Review", "docs", "Review Documentation", "Expert"),
    ("Maturation", "needs work", "Review", "review", "Review Code", "Expert"),
    ("Maturation", "needs work", "Review", "report", "Review Report", "Expert"),
    ("Maturation", "needs work", "Review", "feedback", "Send Feedback", "Expert"),
    ("Maturation", "i reviewed", "Review", "posts", "Review Posts", "Expert"),
    ("Maturation", "i reviewed", "Review", "thread", "Analyze Thread Progression", "Novice"),
    ("Maturation", "i reviewed", "Review", "discussion", "Analyze Discussions", "Novice"),
)

DEFAULT_SYNONYMS: dict[str, tuple[str, ...]] = {
    "help": ("assist", "assistance"),
    "bug": ("defect", "issue"),
    "docs": ("documentation",),
    "patch": ("changeset",),
    "fix": ("repair",),
}


def default_catalog(phase: str | None = None) -> Catalog:
    """The shipped starter catalog, optionally narrowed to one phase."""
    catalog = Catalog(
        tuple(CatalogRule(*fields) for fields in _RULES),
        dict(DEFAULT_SYNONYMS),
    )
    if phase is None:
        return catalog
    return catalog.for_phase(phase)
