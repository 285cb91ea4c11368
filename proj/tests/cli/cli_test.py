# Copyright 2026 The Repograph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the repograph command line tool."""

import json
import os
import signal
import subprocess
import sys
import tempfile
import urllib.request

BIN = sys.argv[1]
failures = []


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def run(*args, expect=0, env=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    if p.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
        print("FAIL:", args, p.returncode, p.stderr)
    return p


def run_json(*args):
    p = run("--json", *args)
    return json.loads(p.stdout) if p.returncode == 0 else {}


def git(repo, *args):
    return subprocess.run(["git", *args], cwd=repo, check=True, capture_output=True, text=True).stdout.strip()


def write(repo, path, text):
    full = os.path.join(repo, path)
    os.makedirs(os.path.dirname(full), exist_ok=True)
    with open(full, "w") as f:
        f.write(text)


V1 = {
    "pkg/__init__.py": "",
    "pkg/parser.py": 'def parse_config(text):\n    """Parse configuration text."""\n    return text\n\n'
                     'def parse_args(argv):\n    """Parse command line arguments."""\n    return argv\n',
    "pkg/cli.py": "from pkg.parser import parse_args\n\ndef main(argv):\n"
                  '    """Command line entry point."""\n    return parse_args(argv)\n',
    "tests/test_parser.py": "from pkg.parser import parse_config\n\ndef test_parse_config():\n"
                            "    assert parse_config('a') == 'a'\n",
    "README.md": "# demo\n",
}


with tempfile.TemporaryDirectory() as tmp:
    os.chdir(tmp)  # the default store directory is relative to the working directory
    repo = os.path.join(tmp, "repo")
    os.makedirs(repo)
    git(repo, "init", "-q", "-b", "main")
    git(repo, "config", "user.email", "dev@example.com")
    git(repo, "config", "user.name", "Dev")
    for p, t in V1.items():
        write(repo, p, t)
    git(repo, "add", "-A")
    git(repo, "commit", "-qm", "v1")
    rev1 = git(repo, "rev-parse", "HEAD")
    write(repo, "pkg/network.py", 'def fetch(url):\n    """Fetch a URL."""\n    return url\n')
    git(repo, "add", "-A")
    git(repo, "commit", "-qm", "v2")
    rev2 = git(repo, "rev-parse", "HEAD")

    g1 = os.path.join(tmp, "g1.json")
    g2 = os.path.join(tmp, "g2.json")

    # build: counts follow from the fixture (5 files, 2 folders, 5 functions).
    report = run_json("build", "--repo", repo, "--rev", rev1, "--out", g1)
    check(os.path.exists(g1), "build writes the snapshot")
    nodes = report.get("stats", {}).get("nodes", {})
    check(nodes.get("File") == 5, f"5 File nodes, got {nodes.get('File')}")
    check(nodes.get("Folder") == 2, f"2 Folder nodes, got {nodes.get('Folder')}")
    check(nodes.get("Root") == 1, "one Root")
    check(nodes.get("Function") == 4, f"4 Function nodes, got {nodes.get('Function')}")
    check(report.get("revision") == rev1, "build pins the revision")
    check(report.get("enrichment", {}).get("nodes_enriched", 0) > 0, "build enriches")
    human = run("build", "--repo", repo, "--rev", rev1, "--out", g1).stdout
    check("wrote " + g1 in human and "File" in human, "human build output")

    stats = run_json("stats", "--graph", g1)
    check(stats.get("stats", {}).get("nodes") == nodes, "stats agrees with build")
    check("count" in run("stats", "-g", g1).stdout, "stats table header")

    # search
    res = run_json("search", "--graph", g1, "--query", "parse configuration text", "--k", "2", "--no-llm")
    results = res.get("results", [])
    check(0 < len(results) <= 2, f"search returns at most k rows, got {len(results)}")
    check([r["rank"] for r in results] == list(range(1, len(results) + 1)), "ranks are 1..n")
    check(results and results[0]["path"] == "pkg/parser.py", "parser ranks first")
    rows = run("search", "--graph", g1, "--query", "parse configuration", "--k", "20", "--no-llm").stdout
    lines = [l for l in rows.splitlines() if l.strip()]
    check(lines[0].split() == ["rank", "score", "path", "stages"], "search table header")
    check(1 <= len(lines) - 1 <= 20, "at most 20 file rows")

    # cluster
    for method in ["louvain", "label-propagation", "semantic"]:
        cl = run_json("cluster", "--graph", g1, "--method", method, "--seed", "3")
        files = sorted(f for c in cl.get("clusters", []) for f in c["files"])
        check(len(files) == len(set(files)) and len(files) >= 3, f"{method} partitions the files")
    run("cluster", "--graph", g1, "--method", "astrology", expect=1)

    # eval
    cases = os.path.join(tmp, "cases.jsonl")
    with open(cases, "w") as f:
        for i, (text, truth) in enumerate([
            ("Parsing configuration text is broken", ["pkg/parser.py"]),
            ("The command line entry point crashes", ["pkg/cli.py", "pkg/parser.py"]),
        ]):
            f.write(json.dumps({"repo": repo, "revision": rev1, "issue_id": str(i + 1), "issue_text": text,
                                "pr_id": str(100 + i), "ground_truth": truth,
                                "created_at": "2026-01-01T00:00:00Z"}) + "\n")
    ev = run_json("eval", "--graph", g1, "--cases", cases, "--k", "50", "--no-llm")
    check(ev.get("test_cases") == 2, "eval scores both cases")
    check(ev.get("median_recall_at_k") == 1.0, f"recall@50 is 1 on a 5-file repo, got {ev.get('median_recall_at_k')}")
    table = run("eval", "--graph", g1, "--cases", cases, "--k", "50", "--no-llm", "--latency").stdout
    for col in ["Repository", "Languages", "Test cases", "Files total", "Files returned", "% Files returned",
                "Median Recall@50", "Median Precision@50"]:
        check(col in table, f"eval table column {col}")
    out = os.path.join(tmp, "report.json")
    run("eval", "--graph", g1, "--cases", cases, "-o", out, "--no-llm")
    check(len(json.load(open(out)).get("cases", [])) == 2, "eval report keeps per-case rows")

    # update equals a fresh build at the new revision
    up = run_json("update", "--graph", g1, "--from", rev1, "--to", rev2, "--out", g2)
    check(up.get("files_added") == ["pkg/network.py"], "update adds the new file")
    run("build", "--repo", repo, "--rev", rev2, "--out", os.path.join(tmp, "fresh.json"))
    a = run_json("stats", "--graph", g2)
    b = run_json("stats", "--graph", os.path.join(tmp, "fresh.json"))
    check(a.get("stats") == b.get("stats") and a.get("revision") == rev2, "update matches a fresh build")
    run("update", "--graph", g2, "--from", rev1, "--to", rev2, expect=2)

    # enrich
    en = run_json("enrich", "--graph", g1, "--all", "--out", os.path.join(tmp, "g3.json"))
    check(en.get("nodes_in_scope", 0) > 0, "enrich --all covers nodes")
    bare = os.path.join(tmp, "bare.json")
    run("build", "--repo", repo, "--out", bare, "--no-enrich")
    run("search", "--graph", bare, "--query", "x", expect=2)
    en = run_json("enrich", "--graph", bare)
    check(en.get("nodes_enriched", 0) > 0, "enrich fills a bare graph")
    run("search", "--graph", bare, "--query", "parse")

    # cases from an offline fixture
    fixture = os.path.join(tmp, "host.json")
    json.dump({"pull_requests": [{"number": 7, "title": "Fix parser", "body": "Fixes #3",
                                  "merged_at": "2026-03-01T00:00:00Z", "base": "main", "base_sha": rev1,
                                  "files": ["pkg/parser.py"]}],
               "issues": [{"number": 3, "title": "Parser fails", "body": "It fails.",
                           "created_at": "2026-02-01T00:00:00Z"}]}, open(fixture, "w"))
    cases_out = os.path.join(tmp, "gen.jsonl")
    run("cases", "--repo", "owner/demo", "--cutoff", "2026-01-01", "--fixture", fixture, "--out", cases_out)
    gen = [json.loads(l) for l in open(cases_out)]
    check(len(gen) == 1 and gen[0]["ground_truth"] == ["pkg/parser.py"], "cases from the fixture")

    # usage errors exit 1, operational failures exit 2
    run(expect=1)
    run("frobnicate", expect=1)
    run("search", "--graph", g1, expect=1)
    run("search", "--graph", g1, "-q", "x", "--mode", "bogus", expect=1)
    run("search", "--graph", g1, "-q", "x", "--k", "0", expect=1)
    run("build", "--repo", repo, expect=1)
    run("stats", "--graph", os.path.join(tmp, "missing.json"), expect=1)
    run("--help", expect=0)
    run("build", "--repo", os.path.join(tmp, "nowhere"), "--out", os.path.join(tmp, "x.json"), expect=2)
    run("build", "--repo", repo, "--rev", "no-such-rev", "--out", os.path.join(tmp, "x.json"), expect=2)
    corrupt = os.path.join(tmp, "corrupt.json")
    open(corrupt, "w").write("{not json")
    p = run("stats", "--graph", corrupt, expect=2)
    check(p.stderr.startswith("error"), "errors go to stderr")
    env = dict(os.environ, REPOGRAPH_EMBED_URL="http://127.0.0.1:1", REPOGRAPH_PROVIDER_TIMEOUT_MS="500")
    run("search", "--graph", g1, "-q", "parse", "--no-llm", expect=2, env=env)
    env = dict(os.environ, REPOGRAPH_EMBED_DIM="many")
    run("stats", "--graph", g1, expect=1, env=env)

    # serve
    store = os.path.join(tmp, "store")
    srv = subprocess.Popen([BIN, "--json", "serve", "--port", "0", "--store", store],
                           stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    try:
        port = json.loads(srv.stdout.readline())["port"]
        with urllib.request.urlopen(f"http://127.0.0.1:{port}/healthz", timeout=10) as r:
            check(json.loads(r.read()) == {"status": "ok", "graphs_loaded": 0}, "healthz")
        req = urllib.request.Request(f"http://127.0.0.1:{port}/graphs",
                                     data=json.dumps({"repo": repo, "async": False, "graph_id": "demo"}).encode(),
                                     headers={"Content-Type": "application/json"})
        with urllib.request.urlopen(req, timeout=60) as r:
            check(r.status == 201, "synchronous build through the service")
    finally:
        srv.send_signal(signal.SIGTERM)
        code = srv.wait(timeout=30)
    check(code == 0, f"serve exits cleanly, got {code}")
    check(os.path.exists(os.path.join(store, "demo.json")), "service persisted the graph")
    audit = [json.loads(l) for l in open(os.path.join(store, "audit.jsonl"))]
    check(len(audit) == 1 and audit[0]["endpoint"] == "POST /graphs", "one audit record per request")

if failures:
    print(f"{len(failures)} failures")
    sys.exit(1)
print("cli: all checks passed")
