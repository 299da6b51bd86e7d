"""Validates CLI and HTTP output against schemas/ with the jsonschema package,
and checks the built-in validator agrees with it on mutated review sets."""

import copy
import json
import os
import random
import re
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.request

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(77)

CLI, ROOT = sys.argv[1], sys.argv[2]
SCHEMAS = {
    name: json.load(open(os.path.join(ROOT, "schemas", name + ".schema.json")))
    for name in ("restaurant_review_set", "classify_response", "digest", "health", "error")
}
CORPUS = os.path.join(ROOT, "tests", "fixtures", "corpus.json")
ENV = {k: v for k, v in os.environ.items() if k != "QUICKCUE_CONFIG"}
failures = []


def check(name, doc, label):
    cls = jsonschema.validators.validator_for(SCHEMAS[name])
    cls.check_schema(SCHEMAS[name])
    errors = list(cls(SCHEMAS[name]).iter_errors(doc))
    if errors:
        failures.append(f"{label}: {errors[0].message}")


def cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=ENV)


# CLI documents
for sub, schema in (("classify", "classify_response"), ("digest", "digest")):
    r = cli(sub, "--input", CORPUS)
    assert r.returncode == 0, r.stderr
    check(schema, json.loads(r.stdout), f"cli {sub}")
for golden, schema in (("digest_fixture.json", "digest"), ("classify_fixture.json", "classify_response")):
    check(schema, json.load(open(os.path.join(ROOT, "tests", "golden", golden))), golden)
check("restaurant_review_set", json.load(open(CORPUS)), "corpus fixture")

# HTTP documents
log = tempfile.NamedTemporaryFile(delete=False)
server = subprocess.Popen([CLI, "serve", "--port", "0"], stderr=log, env=ENV)
try:
    port = None
    for _ in range(400):
        m = re.search(rb"listening on http://127\.0\.0\.1:(\d+)", open(log.name, "rb").read())
        if m:
            port = int(m.group(1))
            break
        time.sleep(0.025)
    assert port, open(log.name).read()
    base = f"http://127.0.0.1:{port}"

    def request(path, body=None):
        req = urllib.request.Request(base + path, data=body,
                                     headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(req) as resp:
                return resp.status, json.loads(resp.read())
        except urllib.error.HTTPError as e:
            return e.code, json.loads(e.read())

    status, doc = request("/health")
    assert status == 200
    check("health", doc, "GET /health")
    status, doc = request("/v1/digest", open(CORPUS, "rb").read())
    assert status == 200
    check("digest", doc, "POST /v1/digest")
    for path, body, want in (("/v1/digest", b'{"reviews": []}', 400),
                             ("/v1/classify", b"not json", 400),
                             ("/v1/missing", None, 404)):
        status, doc = request(path, body)
        assert status == want, (path, status)
        check("error", doc, f"{path} -> {status}")
finally:
    server.terminate()
    server.wait(timeout=10)

# Differential check of the built-in validator on schema-level mutations.
base_doc = json.load(open(CORPUS))
rng = random.Random(5)


def rev(d):
    reviews = d.get("reviews")
    if isinstance(reviews, list):
        dicts = [r for r in reviews if isinstance(r, dict)]
        if dicts:
            return rng.choice(dicts)
    return {}


mutations = [
    lambda d: d.pop("restaurant_id"),
    lambda d: d.update(restaurant_id=7),
    lambda d: d.update(reviews="none"),
    lambda d: d.update(extra=True),
    lambda d: rev(d).pop("text", None),
    lambda d: rev(d).pop("id", None),
    lambda d: rev(d).update(id=""),
    lambda d: rev(d).update(rating=rng.choice([0, 6, 3.5, "5", -1, 1, 5])),
    lambda d: rev(d).update(date=rng.choice(["2026-6-01", "yesterday", "2026-06-01", 20260601])),
    lambda d: rev(d).update(author=rng.choice([None, "x", 3])),
    lambda d: rev(d).update(stars=4),
    lambda d: isinstance(d.get("reviews"), list) and d["reviews"].append("oops"),
    lambda d: None,
]
verdicts = {True: 0, False: 0}
with tempfile.TemporaryDirectory() as tmp:
    for i in range(60):
        doc = copy.deepcopy(base_doc)
        for _ in range(rng.randint(1, 2)):
            rng.choice(mutations)(doc)
        path = os.path.join(tmp, f"m{i}.json")
        json.dump(doc, open(path, "w"))
        reference_ok = jsonschema.Draft202012Validator(SCHEMAS["restaurant_review_set"]).is_valid(doc)
        r = cli("classify", "--input", path)
        ours_ok = r.returncode == 0
        verdicts[reference_ok] += 1
        if reference_ok != ours_ok:
            failures.append(f"validator disagreement on {json.dumps(doc)[:200]}: "
                            f"jsonschema={reference_ok} cli={r.returncode} {r.stderr.strip()}")
        elif not ours_ok and "SchemaError" not in r.stderr:
            failures.append(f"unexpected error kind: {r.stderr.strip()}")

if failures:
    print("\n".join(failures))
    sys.exit(1)
print(f"schema cross-check passed ({verdicts[True]} valid and {verdicts[False]} invalid mutants agreed)")
