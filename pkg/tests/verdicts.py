"""Acceptance verdict lines, filled in by test_acceptance.py and printed at session end."""

ACCEPTANCE_LINES: dict = {}


def record(number: int, checks: dict) -> bool:
    """Store ``CRITERION n: PASS|FAIL`` plus each sub-check; return overall pass.

    ``checks`` maps a sub-check name to ``ok`` or ``(ok, detail)``.
    """
    parts, all_ok = [], True
    for name, value in checks.items():
        ok, detail = value if isinstance(value, tuple) else (value, "")
        ok = bool(ok)
        all_ok &= ok
        parts.append(f"{name}: {'ok' if ok else 'FAIL'}" + (f" [{detail}]" if detail else ""))
    line = f"CRITERION {number:2d}: {'PASS' if all_ok else 'FAIL'}  " + "; ".join(parts)
    ACCEPTANCE_LINES[number] = line
    print(line)
    return all_ok
