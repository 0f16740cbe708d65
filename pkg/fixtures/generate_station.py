#!/usr/bin/env python3
"""Regenerate the 500 kV station fixture files in fixtures/station/.

The fixture mirrors the published single-line diagram of the case-study
station: two transformers, eight capacitors, 40 breakers, and 84
switches, plus the operator/management systems, companies, and
manufacturers wired to them. Output is deterministic; run from anywhere.
"""

from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).parent / "station"

T1, T2 = "Transformer #1", "Transformer #2"
STATION = "500 kV Station"

T1_SWITCHES = ["#2016", "#3016", "#50212", "#50221"]
T2_SWITCHES = ["#2026", "#3026", "#50213", "#50222"]
CAPACITORS = [f"Capacitor #{i}" for i in range(1, 9)]
CAP_SWITCHES = [f"#610{i}" for i in range(1, 9)]
BREAKERS = [f"Breaker #50{i:02d}" for i in range(1, 41)]
BRK_SWITCHES = [f"#70{i:02d}" for i in range(1, 69)]
SWITCHES = T1_SWITCHES + T2_SWITCHES + CAP_SWITCHES + BRK_SWITCHES

FIRST_LEVEL_CLASSES = [
    "Operator", "Operations", "Components", "Voltage-Level",
    "State-Convert", "Manufacturer", "External-Lines", "Internal-Lines",
]
EQUIPMENT_CLASSES = ["Transformer", "Capacitor", "Breaker", "Switch"]

SYSTEMS = [
    ("Operation System 1", "Operation", "Electrical Company 1"),
    ("Management System 1", "Management", "Electrical Company 1"),
    ("Operation System 2", "Operation", "Electrical Company 2"),
    ("Management System 2", "Management", "Electrical Company 2"),
]
COMPANIES = ["Electrical Company 1", "Electrical Company 2"]
MANUFACTURERS = ["Manufacturer 1", "Manufacturer 2"]


def station_yaml() -> str:
    lines = [
        "# 500 kV station topology: components, connections, and the",
        "# responsible systems, companies, and manufacturers.",
        "station:",
        f"  label: {STATION}",
        "  voltage_class: 500 kV",
        "ontology_classes:",
    ]
    for cls in FIRST_LEVEL_CLASSES + EQUIPMENT_CLASSES:
        lines.append(f"  - {cls}")
    lines.append("components:")

    def component(cid, label, cls, voltage, manufacturer=None,
                  operator_system=None, management_system=None):
        lines.append(f"  - id: {cid}")
        lines.append(f'    label: "{label}"')
        lines.append(f"    ontology_class: {cls}")
        lines.append(f"    voltage_level: {voltage}")
        if manufacturer:
            lines.append(f"    manufacturer: {manufacturer}")
        if operator_system:
            lines.append(f"    operator_system: {operator_system}")
        if management_system:
            lines.append(f"    management_system: {management_system}")

    component("T1", T1, "Transformer", "500 kV", "Manufacturer 1",
              "Operation System 1", "Management System 1")
    component("T2", T2, "Transformer", "500 kV", "Manufacturer 2",
              "Operation System 2", "Management System 2")
    for i, label in enumerate(CAPACITORS, start=1):
        component(f"C{i}", label, "Capacitor", "35 kV")
    for i, label in enumerate(BREAKERS, start=1):
        component(f"B{i:02d}", label, "Breaker", "500 kV")
    for i, label in enumerate(SWITCHES, start=1):
        component(f"S{i:03d}", label, "Switch", "500 kV")

    lines.append("connections:")

    def connect(a, b):
        lines.append(f'  - ["{a}", "{b}"]')

    for sw in T1_SWITCHES:
        connect(T1, sw)
    for sw in T2_SWITCHES:
        connect(T2, sw)
    for cap, sw in zip(CAPACITORS, CAP_SWITCHES):
        connect(cap, sw)
    for i, sw in enumerate(T1_SWITCHES + T2_SWITCHES):
        connect(sw, BREAKERS[i])
    for i, sw in enumerate(CAP_SWITCHES):
        connect(sw, BREAKERS[8 + i])
    for i, sw in enumerate(BRK_SWITCHES):
        connect(sw, BREAKERS[i % 40])

    lines.append("systems:")
    for label, kind, company in SYSTEMS:
        lines.append(f"  - label: {label}")
        lines.append(f"    kind: {kind}")
        lines.append(f"    controlled_by: {company}")
    lines.append("companies:")
    for company in COMPANIES:
        lines.append(f"  - {company}")
    return "\n".join(lines) + "\n"


def power_dict() -> str:
    rows: list[tuple[str, str, str | None]] = []

    def add(surface, category, canonical=None):
        rows.append((surface, category, canonical))

    add(STATION, "-")
    for cls in FIRST_LEVEL_CLASSES:
        add(cls, "-")
    for cls in EQUIPMENT_CLASSES:
        add(cls, "E1")
    # switch labels start with '#', which the dictionary format reserves
    # for comments; switches therefore only exist in the structured data
    for label in [T1, T2] + CAPACITORS + BREAKERS:
        add(label, "E1")
    for label, _, _ in SYSTEMS:
        add(label, "E2")
    for label in COMPANIES:
        add(label, "E2")
    for label in MANUFACTURERS:
        add(label, "E3")
    for word in ("outage", "overheating", "fire"):
        add(word, "P")
    # relation vocabulary and verb aliases
    add("Connect", "R1")
    add("BelongTo", "R1")
    add("Operate", "R2")
    add("Manage", "R2")
    add("Manufacture", "R3")
    add("Control", "R2")
    add("connects", "R1", "Connect")
    add("belongsto", "R1", "BelongTo")
    add("operates", "R2", "Operate")
    add("manages", "R2", "Manage")
    add("manufactures", "R3", "Manufacture")
    add("controls", "R2", "Control")
    # spelling variants used in free-text records
    add("transformer#1", "E1", T1)
    add("transformer#2", "E1", T2)
    for cap in CAPACITORS:
        add(cap.replace("Capacitor #", "capacitor#"), "E1", cap)
    for brk in BREAKERS:
        add(brk.replace("Breaker #", "breaker#"), "E1", brk)
    add("os1", "E2", "Operation System 1")
    add("ms1", "E2", "Management System 1")
    add("os2", "E2", "Operation System 2")
    add("ms2", "E2", "Management System 2")
    add("ec1", "E2", "Electrical Company 1")
    add("ec2", "E2", "Electrical Company 2")
    add("mfr1", "E3", "Manufacturer 1")
    add("mfr2", "E3", "Manufacturer 2")

    lines = ["# electric-power dictionary for the 500 kV station fixture"]
    for surface, category, canonical in rows:
        if canonical:
            lines.append(f"{surface}\t{category}\t{canonical}")
        else:
            lines.append(f"{surface}\t{category}")
    return "\n".join(lines) + "\n"


def common_dict() -> str:
    words = [
        "the", "a", "was", "at", "on", "found", "during", "routine",
        "inspection", "observed", "today", "and", "after", "unit", "line",
    ]
    lines = ["# common-words dictionary"]
    lines += [f"{w}\t-" for w in words]
    return "\n".join(lines) + "\n"


def corpus() -> str:
    return "\n".join([
        "transformer#1 belongsto Transformer.",
        "os1 operates transformer#1.",
        "ms1 manages transformer#1.",
        "mfr1 manufactures transformer#1.",
        "capacitor#1 connects breaker#5009.",
        "transformer#2 outage found during routine inspection.",
        "capacitor#3 overheating observed.",
        "ec1 controls os1.",
    ]) + "\n"


def tagged() -> str:
    return "\n".join([
        "# gold-segmented training lines (token boundaries marked with |)",
        "transformer#1|connects|#2016",
        "transformer#2|connects|#3016",
        "os1|operates|transformer#1",
        "ms1|manages|transformer#2",
        "mfr1|manufactures|transformer#1",
        "transformer#2|outage",
        "capacitor#3|overheating",
        "ec1|controls|os1",
        "a|switch|trips",
        "the|line|held",
    ]) + "\n"


def rules() -> str:
    return "\n".join([
        "# default inference rules for the station fixture",
        "belongto-trans: (?a, BelongTo, ?b) & (?b, BelongTo, ?c) => (?a, BelongTo, ?c)",
        "control-resp: (?c, Control, ?s) & (?s, Operate, ?e) => (?c, ResponsibleFor, ?e)",
    ]) + "\n"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "station.yaml").write_text(station_yaml(), encoding="utf-8")
    (OUT / "power.dict").write_text(power_dict(), encoding="utf-8")
    (OUT / "common.dict").write_text(common_dict(), encoding="utf-8")
    (OUT / "corpus.txt").write_text(corpus(), encoding="utf-8")
    (OUT / "tagged.txt").write_text(tagged(), encoding="utf-8")
    (OUT / "rules.txt").write_text(rules(), encoding="utf-8")
    print(f"wrote fixture files to {OUT}")


if __name__ == "__main__":
    main()
