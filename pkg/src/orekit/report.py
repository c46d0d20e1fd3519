"""Deterministic command reports and their renderings.

The JSON rendering is byte-stable: keys are sorted, separators fixed, and
nothing time- or machine-dependent enters the payload (wall-clock timing
is logged to stderr by the CLI instead).  The text rendering draws
aligned tables for the set-valued verbs.  Figure rendering is optional
and writes a matplotlib chart next to the report, also deterministically.
"""

import json
from dataclasses import dataclass, field


@dataclass
class CommandReport:
    command: str
    inputs: dict
    result: dict
    guards: dict = field(default_factory=dict)

    def to_obj(self):
        return {"command": self.command, "inputs": self.inputs,
                "result": self.result, "guards": self.guards}


def render_json(report):
    return json.dumps(report.to_obj(), sort_keys=True, indent=2) + "\n"


def _table(rows, headers):
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(str(cell)))
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*(str(c) for c in row)) for row in rows)
    return lines


def render_text(report):
    lines = [f"command: {report.command}"]
    for key in sorted(report.inputs):
        lines.append(f"  {key}: {report.inputs[key]}")
    result = report.result
    if report.command == "classes" and "slices" in result:
        lines.append(f"roots ({len(result['roots'])}): "
                     + ", ".join(result["roots"]))
        rows = [(s["representative"], len(s["witnesses"]),
                 ", ".join(s["members"])) for s in result["slices"]]
        lines.extend(_table(rows, ("representative", "|E(f,a)|", "slice")))
        lines.append(f"coverage: {result['coverage']}")
        for key in ("kernel_root_link", "centralizer_closure"):
            lines.append(f"{key}: {result[key]}")
    elif report.command == "validate":
        for section in ("twist", "embedding"):
            lines.append(f"{section}:")
            for check in result[section]["checks"]:
                mark = "pass" if check["passed"] else "FAIL"
                extra = f"  witness {check['witness']}" if check.get("witness") else ""
                lines.append(f"  {check['name']:<24} {mark}{extra}")
        lines.append(f"passed: {result['passed']}")
    else:
        lines.extend(_render_plain("", result))
    for key in sorted(report.guards):
        lines.append(f"guard {key}: {report.guards[key]}")
    return "\n".join(lines) + "\n"


def _render_plain(prefix, value):
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            sub = _render_plain(f"{prefix}{key}.", value[key])
            if len(sub) == 1 and not isinstance(value[key], (dict, list)):
                lines.append(f"{prefix}{key}: {value[key]}")
            else:
                lines.extend(sub)
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{prefix[:-1]}: [{', '.join(str(v) for v in value)}]"]
        lines = []
        for i, v in enumerate(value):
            lines.extend(_render_plain(f"{prefix}{i}.", v))
        return lines
    return [f"{prefix[:-1]}: {value}"]


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

_FIGURE_VERBS = ("center", "centralizer", "roots", "classes", "semi-find")


def supports_figure(command):
    return command in _FIGURE_VERBS


def render_figure(report, path, ring_card=None):
    """Draw a small chart summarizing a set-valued report.

    PNG output is kept byte-deterministic: fixed size, fixed dpi, and a
    constant metadata block.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    result = report.result
    command = report.command
    if command == "classes":
        slices = result["slices"]
        labels = [s["representative"] for s in slices]
        sizes = [len(s["members"]) for s in slices]
        ax.bar(range(len(sizes)), sizes, color="#4878b0")
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
        ax.set_ylabel("slice size")
        ax.set_title(f"root classes of {report.inputs.get('poly', '')}")
    elif command == "roots":
        pts = result["roots"]
        ax.bar(["roots", "points"], [len(pts), result["space_size"]],
               color=["#4878b0", "#c5cbd3"])
        ax.set_ylabel("count")
        ax.set_title(f"roots of {report.inputs.get('poly', '')}")
    elif command in ("center", "centralizer"):
        key = "center" if command == "center" else "members"
        members = result[key]
        total = ring_card if ring_card is not None else len(members)
        ax.bar(["members", "carrier"], [len(members), total],
               color=["#4878b0", "#c5cbd3"])
        ax.set_ylabel("count")
        ax.set_title(command)
    elif command == "semi-find":
        certs = result["certificates"]
        by_degree = {}
        for c in certs:
            by_degree[c["degree"]] = by_degree.get(c["degree"], 0) + 1
        degrees = sorted(by_degree)
        ax.bar([str(d) for d in degrees], [by_degree[d] for d in degrees],
               color="#4878b0")
        ax.set_xlabel("degree")
        ax.set_ylabel("certified polynomials")
        ax.set_title("semi-invariants found")
    else:
        plt.close(fig)
        raise ValueError(f"no figure defined for {command!r}")
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": "orekit"})
    plt.close(fig)
