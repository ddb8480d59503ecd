"""Shared pytest wiring: a per-criterion summary for the acceptance suite.

Each test in test_acceptance.py guards one numbered acceptance criterion.
After a run that included any of them, the terminal summary gets one
PASS/FAIL line per criterion so the gate can be read off without digging
through the dot stream.
"""

ACCEPTANCE = {
    "test_closed_adiabatic_limit": (1, "closed-system adiabatic limit"),
    "test_hermitian_reduction": (2, "no-dissipator reduction to eigenvalue "
                                    "differences"),
    "test_term_count_exactness": (3, "condition term counts vs enumeration"),
    "test_planted_jordan_recovery": (4, "planted Jordan structure recovery"),
    "test_transition_series": (5, "transition-counting propagator series"),
    "test_dephasing_dynamics": (6, "dephasing master-equation dynamics"),
    "test_open_regime_classification": (7, "open-system regime "
                                          "classification"),
    "test_frozen_eigenvector_refutation": (8, "frozen-eigenvector shortcut "
                                              "refutation"),
    "test_cross_formulation_agreement": (9, "coefficient flow vs direct "
                                           "integration"),
}


def _criterion_for(nodeid):
    if "test_acceptance.py::" not in nodeid:
        return None
    name = nodeid.rsplit("::", 1)[-1].split("[", 1)[0]
    return ACCEPTANCE.get(name)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            crit = _criterion_for(getattr(rep, "nodeid", ""))
            if crit is None:
                continue
            ok = status == "passed"
            number, label = crit
            outcomes[number] = (outcomes.get(number, (True,))[0] and ok,
                                label)
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(outcomes):
        ok, label = outcomes[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {number} [{verdict}] {label}",
            green=ok, red=not ok)
