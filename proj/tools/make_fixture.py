#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# SPDX-License-Identifier: Apache-2.0
"""Writes the bundled fixture dataset: a small microservice system with
logs, metrics and traces, eight fault scenarios (two removed by curation),
a knowledge graph, scripted agent replies for each workflow, and scripted
judge replies. Output is a pure function of the seed."""

import argparse
import csv
import json
import math
import random
from pathlib import Path

T0 = 1756728000000  # 2025-09-01 12:00:00 UTC, ms
MIN = 60_000
END = T0 + 180 * MIN
GAP = (T0 + 130 * MIN, T0 + 165 * MIN)

SERVICES = ["webservice", "mobservice", "loginservice", "dbservice", "redisservice"]
INSTANCES = [f"{s}{i}" for s in SERVICES for i in (1, 2)]
HOST_OF = {
    "webservice1": "host1", "webservice2": "host2", "mobservice1": "host1", "mobservice2": "host2",
    "loginservice1": "host3", "loginservice2": "host4", "dbservice1": "host3", "dbservice2": "host4",
    "redisservice1": "host1", "redisservice2": "host3",
}
CALLS = [("webservice", "loginservice"), ("webservice", "mobservice"), ("loginservice", "dbservice"),
         ("mobservice", "redisservice"), ("dbservice", "redisservice")]
FAULT_TYPES = ["high memory usage", "unexpected process termination", "session timeout", "file missing",
               "internal permission misconfiguration"]

# id, start minute, length minutes, location, fault type
SCENARIOS = [
    ("s01", 30, 5, "webservice1", "high memory usage"),
    ("s02", 50, 5, "loginservice2", "session timeout"),
    ("s03", 70, 5, "dbservice1", "unexpected process termination"),
    ("s04", 74, 4, "mobservice2", "file missing"),  # overlaps s03
    ("s05", 90, 5, "redisservice2", "file missing"),
    ("s06", 110, 5, "mobservice1", "internal permission misconfiguration"),
    ("s07", 140, 5, "webservice2", "session timeout"),  # inside the telemetry gap
    ("s08", 170, 5, "webservice2", "high memory usage"),
]
CURATED = [s for s in SCENARIOS if s[0] not in ("s04", "s07")]


def in_gap(t):
    return GAP[0] < t < GAP[1]


def active_fault(t):
    for sid, start, length, loc, ftype in SCENARIOS:
        if sid in ("s04", "s07"):
            continue
        if T0 + start * MIN <= t <= T0 + (start + length) * MIN:
            return loc, ftype, T0 + start * MIN
    return None


def knowledge_graph():
    schema = {
        "entity_types": [
            {"name": "Service_Instance", "description": "A running replica of a service.", "fault_types": FAULT_TYPES},
            {"name": "Service", "description": "A logical microservice.", "fault_types": []},
            {"name": "Host", "description": "A machine that runs instances and data stores.", "fault_types": []},
            {"name": "Cache", "description": "An in-memory data store.", "fault_types": []},
            {"name": "Database", "description": "A persistent data store.", "fault_types": []},
        ],
        "relationship_types": [
            {"name": "control_flow", "description": "Source service calls target service.", "source": "Service",
             "target": "Service"},
            {"name": "data_flow", "description": "Source service reads or writes the target store.",
             "source": "Service", "target": "Cache"},
            {"name": "has_instance", "description": "Service has the target instance.", "source": "Service",
             "target": "Service_Instance"},
            {"name": "instance_of", "description": "Instance belongs to the target service.",
             "source": "Service_Instance", "target": "Service"},
            {"name": "hosted_on", "description": "Source runs on the target host.", "source": "Service_Instance",
             "target": "Host"},
        ],
    }
    nodes = [{"name": s, "type": "Service"} for s in SERVICES]
    nodes += [{"name": i, "type": "Service_Instance", "attributes": {"port": 8000 + n}} for n, i in enumerate(INSTANCES)]
    nodes += [{"name": f"host{n}", "type": "Host", "attributes": {"zone": "a" if n < 3 else "b"}} for n in range(1, 5)]
    nodes += [{"name": "redis", "type": "Cache"}, {"name": "mysql", "type": "Database"}]
    edges = [{"source": a, "type": "control_flow", "target": b} for a, b in CALLS]
    edges += [{"source": "redisservice", "type": "data_flow", "target": "redis"},
              {"source": "dbservice", "type": "data_flow", "target": "mysql"}]
    for i in INSTANCES:
        svc = i[:-1]
        edges.append({"source": svc, "type": "has_instance", "target": i})
        edges.append({"source": i, "type": "instance_of", "target": svc})
        edges.append({"source": i, "type": "hosted_on", "target": HOST_OF[i]})
    edges += [{"source": "redis", "type": "hosted_on", "target": "host2"},
              {"source": "mysql", "type": "hosted_on", "target": "host4"}]
    return {"schema": schema, "nodes": nodes, "edges": edges}


def telemetry(rng):
    logs, metrics, spans = [], [], []
    base_mem = {i: 40 + 3 * n for n, i in enumerate(INSTANCES)}
    base_cpu = {i: 20 + 2 * n for n, i in enumerate(INSTANCES)}
    for t in range(T0, END, 30_000):
        if in_gap(t):
            continue
        fault = active_fault(t)
        for inst in INSTANCES:
            mem = base_mem[inst] + rng.gauss(0, 1.5)
            cpu = base_cpu[inst] + rng.gauss(0, 1.0)
            if fault and fault[0] == inst:
                if fault[1] == "high memory usage":
                    mem *= 2.5
                elif fault[1] == "unexpected process termination":
                    cpu = 0.5
            metrics.append((t, inst, "memory_usage", round(mem, 3)))
            metrics.append((t, inst, "cpu_usage", round(cpu, 3)))
    for t in range(T0, END, 60_000):
        if in_gap(t):
            continue
        fault = active_fault(t)
        for n, inst in enumerate(INSTANCES):
            logs.append((t + 100 * n, inst, "INFO", f"request handled in {rng.randint(5, 40)} ms user_id={rng.randint(1000, 9999)}"))
            if fault and fault[0] == inst:
                msg = {
                    "high memory usage": "memory pool near capacity, gc pause {} ms",
                    "unexpected process termination": "worker process exited unexpectedly with code {}",
                    "session timeout": "session expired before response, waited {} ms",
                    "file missing": "could not open resource file /data/res_{}.bin",
                    "internal permission misconfiguration": "permission denied on internal endpoint token {}",
                }[fault[1]]
                logs.append((t + 100 * n + 50, inst, "ERROR", msg.format(rng.randint(100, 999))))
    span_no = 0
    for t in range(T0, END, 10_000):
        if in_gap(t):
            continue
        fault = active_fault(t)
        for a, b in CALLS:
            for k in (1, 2):
                caller, callee = f"{a}{k}", f"{b}{k}"
                dur = 20 + 5 * k + rng.gauss(0, 2.0)
                status = 200
                if fault and fault[0] == callee and t - fault[2] < 60_000:
                    if fault[1] in ("session timeout", "high memory usage", "file missing"):
                        dur *= 10
                    if fault[1] in ("unexpected process termination", "internal permission misconfiguration"):
                        status = 500
                span_no += 1
                spans.append((f"t{span_no:06d}", f"sp{span_no:06d}", caller, callee, t + 7 * k, round(dur, 3), status))
    return logs, metrics, spans


def final_answer(hyps):
    parts = ["Final Answer:"]
    for n, (ftype, loc, path) in enumerate(hyps, 1):
        parts.append(f"{n}. Type: {ftype}\nDescription: {ftype} at {loc}.\nLocation: {loc}\n"
                     f"Justification: alerts on {loc} and its callers.\nPropagation Path: {path}")
    return "\n\n".join(parts)


def caller_path(loc):
    if loc not in INSTANCES:
        return f"webservice1 --(hosted_on)--> {loc}"
    return f"{loc} --(instance_of)--> {loc[:-1]} --(has_instance)--> {loc}"


def hypotheses_for(sid, loc, ftype):
    wrong_loc = "host1" if sid == "s06" else INSTANCES[(INSTANCES.index(loc) + 3) % len(INSTANCES)]
    other = [f for f in FAULT_TYPES if f != ftype]
    if sid in ("s01", "s03", "s08"):
        return [(ftype, loc, caller_path(loc)), (other[0], wrong_loc, caller_path(wrong_loc)),
                (other[1], loc, caller_path(loc))]
    if sid == "s02":
        return [(other[0], wrong_loc, caller_path(wrong_loc)), (ftype, loc, caller_path(loc)),
                (other[1], wrong_loc, "not a path")]
    if sid == "s05":
        return [(other[2], wrong_loc, caller_path(wrong_loc)), (other[0], loc, caller_path(loc)),
                (ftype, wrong_loc, caller_path(wrong_loc))]
    return [(ftype, wrong_loc, caller_path(wrong_loc)), (other[3], loc, caller_path(loc)),
            (other[1], wrong_loc, caller_path(wrong_loc))]


def tool(call_id, name, **args):
    return {"id": call_id, "name": name, "arguments": args}


def agent_scripts(sid, loc, ftype):
    answer = final_answer(hypotheses_for(sid, loc, ftype))
    svc = loc[:-1]
    react = [
        {"content": f"<think>The alerts concentrate around {loc}.</think>Inspect {loc} first.",
         "tool_call": tool("c1", "get_node_attributes", node=loc, reasoning=f"{loc} carries the densest alerts.")},
        {"content": f"Check which components depend on {svc}.",
         "tool_call": tool("c2", "get_node_neighborhood", node=svc, r=1, reasoning="Find callers and instances.")},
        {"content": answer},
    ]
    if sid == "s03":
        # A malformed call is answered with an error observation and the run continues.
        react.insert(1, {"content": "Look up the instance type.",
                         "tool_call": {"id": "c9", "name": "get_all_instances_of_entity_type",
                                       "arguments": "{\"type\": \"Service_Instance\""}})
    plan_execute = [
        {"content": f"1. Inspect the alerts and attributes of {loc}.\n2. Examine the neighbourhood of {svc}."},
        {"content": "Inspecting.", "tool_call": tool("p1", "get_node_attributes", node=loc, reasoning="Step 1.")},
        {"content": f"{loc} shows anomalous alerts."},
        {"content": f"1. Examine the neighbourhood of {svc}."},
        {"content": "Examining.", "tool_call": tool("p2", "get_node_neighborhood", node=svc, r=1, reasoning="Step 2.")},
        {"content": f"{svc} has two instances and upstream callers."},
        {"content": answer},
    ]
    straight = [{"content": f"<think>Rank the alerted instances.</think>{answer}"}]
    return {"react": react, "plan_execute": plan_execute, "straight_shot": straight}


def always_tool(n=60):
    return [{"content": "Checking again.",
             "tool_call": tool(f"a{i}", "check_node_existence", node="webservice1", reasoning="Verify the node.")}
            for i in range(n)]


def judge_reply(failures, affected):
    body = {"failures_identified": failures, "affected_top_hypothesis": affected}
    return {"content": "Step 1: read the trace.\nStep 5: summarise.\n```json\n" + json.dumps(body, indent=2) + "\n```"}


def judge_scripts():
    f = lambda rf, sev: {"type": rf, "model_claim": f"claim for {rf}", "rationale": f"rationale for {rf}", "severity": sev}
    scripts = {
        "s01": [judge_reply([], [])],
        "s02": [judge_reply([f("RF-13", 4), f("RF-05", 2)], ["RF-13"])],
        "s03": [{"content": "I could not decide."},
                {"content": "```json\n{\"failures_identified\": [ {\"type\": \"RF-01\",}\n```"},
                judge_reply([f("RF-01", 3), f("RF-08", 2)], ["RF-01"])],
        "s05": [judge_reply([f("RF-13", 5), f("RF-08", 3), f("RF-08", 2)], "['RF-13', 'RF-08']")],
        "s06": [judge_reply([f("RF-03", 3), f("RF-13", 3)], ["RF-03"])],
        "s08": [judge_reply([f("RF-05", 1)], [])],
    }
    return scripts


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = args.out
    rng = random.Random(args.seed)
    (out / "data").mkdir(parents=True, exist_ok=True)

    (out / "data" / "kg.json").write_text(json.dumps(knowledge_graph(), indent=2) + "\n")
    logs, metrics, spans = telemetry(rng)
    write_csv(out / "data" / "logs.csv", ["timestamp", "service", "level", "message"], logs)
    write_csv(out / "data" / "metrics.csv", ["timestamp", "entity", "metric_name", "value"], metrics)
    write_csv(out / "data" / "traces.csv", ["trace_id", "span_id", "caller", "callee", "start", "duration",
                                            "status_code"], spans)
    write_csv(out / "data" / "scenarios.csv", ["id", "window_start", "window_end", "location", "fault_type"],
              [(sid, T0 + s * MIN, T0 + (s + n) * MIN, loc, ft) for sid, s, n, loc, ft in SCENARIOS])

    for sid, _, _, loc, ftype in CURATED:
        for workflow, script in agent_scripts(sid, loc, ftype).items():
            d = out / "scripts" / workflow
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{sid}.json").write_text(json.dumps(script, indent=2) + "\n")
    (out / "scripts" / "always_tool.json").write_text(json.dumps(always_tool(), indent=2) + "\n")
    plan_first = [{"content": "1. Verify that webservice1 exists."}] + always_tool()
    (out / "scripts" / "always_tool_plan.json").write_text(json.dumps(plan_first, indent=2) + "\n")
    jd = out / "scripts" / "judge"
    jd.mkdir(parents=True, exist_ok=True)
    for sid, script in judge_scripts().items():
        (jd / f"{sid}.json").write_text(json.dumps(script, indent=2) + "\n")

    config = {
        "version": 1,
        "dataset": {
            "name": "micross",
            "telemetry": {
                "logs": {"path": "data/logs.csv", "columns": {"entity": "service"}},
                "metrics": {"path": "data/metrics.csv"},
                "traces": {"path": "data/traces.csv"},
            },
            "scenarios": {"path": "data/scenarios.csv"},
        },
        "kg": {"path": "data/kg.json"},
        "detectors": {"log_rare_threshold": 2, "iforest": {"n_trees": 100, "subsample": 256, "score_threshold": 0.6}},
        "workflow": "REACT",
        "alert_unification": "TIME_BASED",
        "kg_representation": "LIST",
        "agent": {"backend": "scripted", "script_dir": "scripts/react", "model": "scripted-agent"},
        "judge": {"backend": "scripted", "script_dir": "scripts/judge", "model": "scripted-judge", "quota": 100,
                  "max_attempts": 3},
        "seed": 42,
        "parallelism": 4,
        "output_dir": "out",
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
