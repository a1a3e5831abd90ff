"""Convert a WordNet 3.0 database directory (data.*, index.sense) into the
Prolog relational record files read by ``lexsum.wordnet.load_wordnet``.

Usage: python tools/wndb_to_prolog.py WNDB_DIR OUT_DIR [--gzip]

Only the record files the loader understands are written: s, g and the
synset-to-synset pointer relations (hyp, ins, mm, ms, mp, ent, cs, sim).
"""
import argparse
import gzip
import re
from pathlib import Path

POS_DIGIT = {"n": 1, "v": 2, "a": 3, "s": 3, "r": 4}
SENSE_KEY_TYPE = {1: "n", 2: "v", 3: "a", 4: "r", 5: "s"}

# pointer symbol -> prolog predicate
POINTERS = {
    "@": "hyp",
    "@i": "ins",
    "%m": "mm",
    "%s": "ms",
    "%p": "mp",
    "*": "ent",
    ">": "cs",
    "&": "sim",
}

ADJ_MARKER = re.compile(r"\((?:a|p|ip)\)$")


def quote(text):
    return "'" + text.replace("'", "''") + "'"


def read_sense_index(path):
    senses = {}
    with open(path, encoding="latin-1") as fh:
        for line in fh:
            key, offset, sense_number, tag_count = line.split()
            lemma, lex_sense = key.split("%", 1)
            ss_type = SENSE_KEY_TYPE[int(lex_sense.split(":", 1)[0])]
            synset_id = POS_DIGIT[ss_type] * 100_000_000 + int(offset)
            senses[(lemma, synset_id)] = (int(sense_number), int(tag_count))
    return senses


def iter_synsets(db_dir):
    for name in ("noun", "verb", "adj", "adv"):
        with open(db_dir / f"data.{name}", encoding="latin-1") as fh:
            for line in fh:
                if line.startswith("  "):
                    continue  # license header
                fields, _, gloss = line.partition(" | ")
                tok = fields.split()
                ss_type = tok[2]
                synset_id = POS_DIGIT[ss_type] * 100_000_000 + int(tok[0])
                n_words = int(tok[3], 16)
                words = [ADJ_MARKER.sub("", tok[4 + 2 * i]) for i in range(n_words)]
                i = 4 + 2 * n_words
                n_ptrs = int(tok[i])
                ptrs = []
                for k in range(n_ptrs):
                    sym, off, pos, src_tgt = tok[i + 1 + 4 * k: i + 5 + 4 * k]
                    # lexical (word-to-word) pointers are not synset relations
                    if src_tgt == "0000":
                        ptrs.append((sym, POS_DIGIT[pos] * 100_000_000 + int(off)))
                yield synset_id, ss_type, words, gloss.strip(), ptrs


def convert(db_dir, out_dir, compress=False):
    db_dir, out_dir = Path(db_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    senses = read_sense_index(db_dir / "index.sense")
    s_lines, g_lines = [], []
    rel_lines = {pred: [] for pred in POINTERS.values()}
    for synset_id, ss_type, words, gloss, ptrs in iter_synsets(db_dir):
        for w_num, word in enumerate(words, start=1):
            sense_number, tag_count = senses[(word.lower(), synset_id)]
            s_lines.append(
                f"s({synset_id},{w_num},{quote(word.replace('_', ' '))},"
                f"{ss_type},{sense_number},{tag_count})."
            )
        g_lines.append(f"g({synset_id},{quote(gloss)}).")
        for sym, target in ptrs:
            pred = POINTERS.get(sym)
            if pred is not None:
                rel_lines[pred].append(f"{pred}({synset_id},{target}).")

    def write(name, lines):
        path = out_dir / (f"wn_{name}.pl.gz" if compress else f"wn_{name}.pl")
        opener = gzip.open if compress else open
        with opener(path, "wt", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        return path, len(lines)

    results = [write("s", s_lines), write("g", g_lines)]
    results += [write(pred, lines) for pred, lines in rel_lines.items()]
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("wndb_dir")
    ap.add_argument("out_dir")
    ap.add_argument("--gzip", action="store_true")
    args = ap.parse_args()
    for path, count in convert(args.wndb_dir, args.out_dir, args.gzip):
        print(f"{path}: {count} records")


if __name__ == "__main__":
    main()
