#!/usr/bin/env python3
"""Regenerates the bundled toy datasets. Output is deterministic (fixed seed)."""
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

ANNOTATIONS = [
    ("a01", "Fix null pointer exception in parser", "fix null pointer exception in parser", [4, 4, 4]),
    ("a02", "added chain of responsibility class diagram", "added chain diagram", [2, 2, 3]),
    ("a03", "Update change", "Updated changes", [4, 3, 4]),
    ("a04", "Remove unused imports", "delete unused imports", [3, 4, 3]),
    ("a05", "Bump version to 2.1.0", "Bump version to 2.0.9", [2, 3, 2]),
    ("a06", "Add unit tests for tokenizer", "Add tests", [2, 1, 2]),
    ("a07", "Refactor login handler", "Merge branch 'master' into dev", [0, 0, 1]),
    ("a08", "Fix typo in README", "Fix typo in README.", [4, 4, 4]),
    ("a09", "Handle empty response from server", "handle empty server response", [3, 3, 4]),
    ("a10", "Improve performance of cache lookup", "optimize cache lookup", [3, 2, 3]),
    ("a11", "Rename config option timeout", "Update documentation", [0, 1, 0]),
    ("a12", "Use StringBuilder for concatenation", "use string builder in loop", [2, 2, 1]),
    ("a13", "Revert previous commit", "Revert \"Add logging\"", [2, 2, 2]),
    ("a14", "Add support for Python 3.8", "Add Python 3.8 support", [3, 4, 4]),
    ("a15", "Fix crash when file is missing", "fix crash", [1, 2, 2]),
    ("a16", "Initial commit", "initial import", [3, 3, 2]),
    ("a17", "Move helpers into utils module", "Add helpers", [1, 1, 0]),
    ("a18", "Clean up build scripts", "cleanup build script", [3, 3, 3]),
    ("a19", "Disable flaky network test", "Fix test", [1, 0, 1]),
    ("a20", "Allow users to reset password", "Allow password reset for users", [3, 4, 3]),
]

LANGS = {
    "cpp": ("src/{m}.cpp", "void {f}(int {v}) {{", "std::vector<int> {v};", "return {v} != nullptr;"),
    "csharp": ("Src/{M}.cs", "public void {F}(int {v}) {{", "var {v} = new List<int>();", "return {v} != null;"),
    "java": ("src/main/java/{M}.java", "public void {f}(int {v}) {{", "List<Integer> {v} = new ArrayList<>();",
             "return {v} != null;"),
    "javascript": ("lib/{m}.js", "function {f}({v}) {{", "const {v} = [];", "return {v} !== null;"),
    "python": ("{m}.py", "def {f}({v}):", "{v} = []", "return {v} is not None"),
}

MODULES = ["parser", "cache", "server", "client", "config", "logger", "router", "session", "storage", "auth"]
FUNCS = ["load", "save", "parse", "render", "connect", "validate", "flush", "resolve", "update", "close"]
VARS = ["items", "buffer", "result", "value", "entry", "node", "token", "request", "handle", "count"]

MESSAGES = [
    ("fix", "Fix null check in {f}", "+    if ({v} == null) return;"),
    ("add", "Add {f} to {m}", "+    {decl}"),
    ("remove", "Remove unused {v} from {m}", "-    {decl}"),
    ("rename", "Rename {v} in {f}", "-    {ret}\n+    {ret2}"),
    ("log", "Add logging to {m} {f}", "+    log(\"{f} called\");"),
]


def make_commit(rng, lang, idx):
    path, sig, decl, ret = LANGS[lang]
    m = rng.choice(MODULES)
    f = rng.choice(FUNCS)
    v = rng.choice(VARS)
    v2 = rng.choice([x for x in VARS if x != v])
    kind, msg, change = rng.choice(MESSAGES)
    fmt = dict(m=m, M=m.capitalize(), f=f, F=f.capitalize(), v=v)
    body = change.format(
        f=f, m=m, v=v,
        decl=decl.format(v=v),
        ret=ret.format(v=v),
        ret2=ret.format(v=v2),
    )
    diff = "\n".join([
        "--- a/" + path.format(**fmt),
        "+++ b/" + path.format(**fmt),
        "@@ -1,4 +1,5 @@",
        " " + sig.format(**fmt),
        body,
        " " + ret.format(v=v),
    ])
    message = msg.format(f=f, m=m, v=v)
    return {"id": f"{lang}-{idx:03d}", "diff": diff, "message": message, "lang": lang}


def main():
    rng = random.Random(20211)
    with open(HERE / "annotations_synthetic20.jsonl", "w") as out:
        for rid, ref, pred, scores in ANNOTATIONS:
            out.write(json.dumps({"id": rid, "reference": ref, "prediction": pred, "scores": scores}) + "\n")

    train, test = [], []
    for lang in LANGS:
        commits = [make_commit(rng, lang, i) for i in range(40)]
        train.extend(commits[:32])
        test.extend(commits[32:])
    for name, rows in (("toy_commits_train.jsonl", train), ("toy_commits_test.jsonl", test)):
        with open(HERE / name, "w") as out:
            for r in rows:
                out.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    main()
