from dualgroups.report import Report, render


def test_report_lines_and_summary():
    rep = Report()
    rep.add("first check", True)
    rep.add("second", False)
    other = Report()
    other.add("inner", False, "witness text")
    rep.extend(other, "sub:")
    assert not rep.ok
    assert [c.name for c in rep.failures()] == ["second", "sub:inner"]
    text = render([("E1", rep)])
    assert text.splitlines() == [
        "CHECK E1 first_check PASS",
        "CHECK E1 second FAIL violated",
        "CHECK E1 sub:inner FAIL witness text",
        "SUMMARY 1/3",
    ]
