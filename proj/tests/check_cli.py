"""CLI output checks: schema validation and byte-identical reruns."""
import json
import os
import subprocess
import sys

import jsonschema

CLI, SCHEMA = sys.argv[1], sys.argv[2]


def run(*args):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def validator(definition):
    with open(SCHEMA) as f:
        schema = json.load(f)
    schema = dict(schema, **{"$ref": f"#/$defs/{definition}"})
    return jsonschema.Draft202012Validator(schema)


def check(definition, *args, expect_code=0):
    code, out = run(*args)
    if code != expect_code:
        sys.exit(f"{' '.join(args)}: exit {code}, expected {expect_code}")
    doc = json.loads(out)
    errors = list(validator(definition).iter_errors(doc))
    if errors:
        sys.exit(f"{' '.join(args)}: {errors[0].message} at {list(errors[0].absolute_path)}")
    return out


mode = sys.argv[3]
if mode == "schema":
    check("run_report", "suite", "all", "--seed", "3", "--timing")
    check("run_report", "thompson", "verify", "--suite", "lemma")
    check("commensurability", "subgroup", "commensurable", "--group", "bs(2,3)",
          "--h", "x", "--k", "y^-1 x y", "--bound", "50")
    check("ends_estimate", "ends", "estimate", "--group", "bs(2,3)", "--l", "x^2",
          "--gens", "x,y", "--radii", "2,4,6,8")
    check("completion_laws", "completion", "laws", "--group", "sym3", "--family", "normal-order3")
    data = os.path.join(os.path.dirname(os.path.abspath(SCHEMA)), "..", "data")
    h1 = json.loads(run("family", "h1", "--group", os.path.join(data, "sym3.pres"),
                        "--module", os.path.join(data, "sym3_sign.mod"))[1])
    if (h1["der"], h1["inner"], h1["h1"]) != (2, 1, 1):
        sys.exit(f"sign module over F3: {h1}")
    info = json.loads(run("group", "info", "--group", os.path.join(data, "bs23.pres"))[1])
    if info["abelianization"] != {"free_rank": 1, "torsion": []}:
        sys.exit(f"bs23.pres abelianization: {info['abelianization']}")
    code, _ = run("suite", "nosuch")
    if code != 2:
        sys.exit(f"unknown suite: exit {code}, expected 2")
elif mode == "determinism":
    first = check("run_report", "suite", "all", "--seed", "7")
    second = check("run_report", "suite", "all", "--seed", "7")
    if first != second:
        sys.exit("suite all --seed 7 differs between runs")
else:
    sys.exit(f"unknown mode {mode}")
print("ok")
