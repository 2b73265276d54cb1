#!/usr/bin/env python3
"""Builds the small word-vector file used by the fixture dataset.

The corpus is WordNet glosses (shipped with the pattern3 package) plus the
docstrings of every locally installed Python package. A skip-gram model
is trained with gensim and the 10,000 most frequent words are written in the
whitespace text format with a "vocab dim" header.

    pip download pattern3 --no-deps -d /tmp/pkgs
    python3 tools/make_fixture_vectors.py --pattern-tarball /tmp/pkgs/pattern3-3.0.0.tar.gz \
        --out data/fixture/vectors.10k.txt
"""
import argparse
import ast
import itertools
import os
import pathlib
import re
import sys
import tarfile
import tempfile

import numpy as np
from gensim.models import Word2Vec

KEEP = re.compile(r"[^a-z\s\-']")
SPACES = re.compile(r"\s+")


def clean(text):
    text = KEEP.sub("", text.lower())
    return SPACES.sub(" ", text).strip()


def wordnet_sentences(tarball):
    with tarfile.open(tarball) as tar:
        for member in tar.getmembers():
            if "/wordnet/dict/data." not in member.name:
                continue
            for line in tar.extractfile(member).read().decode("latin-1").splitlines():
                if line.startswith("  ") or "|" not in line:
                    continue
                gloss = line.split("|", 1)[1]
                for part in gloss.split(";"):
                    words = clean(part.replace('"', " ")).split()
                    if len(words) > 2:
                        yield words


def site_package_roots():
    for entry in sys.path:
        root = pathlib.Path(entry)
        if root.name in ("dist-packages", "site-packages") and root.is_dir():
            yield root


def docstring_sentences():
    for site in site_package_roots():
        for root in sorted(p for p in site.iterdir() if p.is_dir() and not p.name.endswith("-info")):
            for path in sorted(root.rglob("*.py")):
                try:
                    tree = ast.parse(path.read_text(errors="replace"))
                except (SyntaxError, ValueError):
                    continue
                for node in ast.walk(tree):
                    if isinstance(node, (ast.FunctionDef, ast.ClassDef, ast.Module,
                                         ast.AsyncFunctionDef)):
                        doc = ast.get_docstring(node)
                        if not doc:
                            continue
                        for para in re.split(r"\n\s*\n|[.!?]\s", doc):
                            words = clean(para).split()
                            if len(words) > 3:
                                yield words


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pattern-tarball", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--size", type=int, default=10000)
    ap.add_argument("--dim", type=int, default=50)
    ap.add_argument("--epochs", type=int, default=10)
    ap.add_argument("--remove-components", type=int, default=2,
                    help="subtract the mean and this many leading principal directions")
    ap.add_argument("--keep-words-from", default=None,
                    help="directory of .txt documents whose in-model words are always kept")
    args = ap.parse_args()

    # Stream deduplicated sentences to disk; the full corpus does not fit in memory as lists.
    seen = set()
    sentences = tokens = 0
    with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as corpus:
        for words in itertools.chain(wordnet_sentences(args.pattern_tarball), docstring_sentences()):
            line = " ".join(words)
            key = hash(line)
            if key in seen:
                continue
            seen.add(key)
            corpus.write(line + "\n")
            sentences += 1
            tokens += len(words)
    print(f"{sentences} sentences, {tokens} tokens", flush=True)

    model = Word2Vec(corpus_file=corpus.name, vector_size=args.dim, window=5, min_count=3, sg=1,
                     negative=5, epochs=args.epochs, seed=7, workers=1)
    os.unlink(corpus.name)
    keep = set()
    if args.keep_words_from:
        for path in sorted(pathlib.Path(args.keep_words_from).glob("*.txt")):
            keep.update(w for w in clean(path.read_text()).split() if w in model.wv.key_to_index)
    # Forced words first, then the most frequent others; written in frequency order.
    ranked = model.wv.index_to_key
    chosen = set(sorted(keep)[: args.size])
    for w in ranked:
        if len(chosen) >= args.size:
            break
        chosen.add(w)
    words = [w for w in ranked if w in chosen]
    print(f"kept {len(keep)} document words", flush=True)
    vectors = np.array([model.wv[w] for w in words], dtype=np.float64)
    if args.remove_components > 0:
        vectors -= vectors.mean(axis=0)
        _, _, vt = np.linalg.svd(vectors, full_matrices=False)
        top = vt[: args.remove_components]
        vectors -= vectors @ top.T @ top
    with open(args.out, "w") as out:
        out.write(f"{len(words)} {args.dim}\n")
        for w, v in zip(words, vectors):
            out.write(w + " " + " ".join(f"{x:.4f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
