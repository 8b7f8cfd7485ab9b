#!/usr/bin/env python3
"""Generate the bundled synthetic corpus (tagged sentences, shallow
benchmark trees and a split file) from a fixed seed.

Usage: gen_corpus.py OUTDIR
"""

import random
import sys
from pathlib import Path

SEED = 1996
SIZE = 140

NOUNS = ["dog", "cat", "man", "woman", "teacher", "book", "park", "garden",
         "film", "hat", "table", "house", "child", "letter", "river", "car"]
PLURALS = ["dogs", "cats", "children", "books", "birds", "letters"]
NAMES = ["Sam", "Kim", "Alex", "Jo", "Lee", "Pat"]
SUBJ_PRON = ["she", "he"]
OBJ_PRON = ["him", "her"]
DETS = [("the", "AT"), ("a", "AT1"), ("this", "DD1"), ("his", "APPGE"), ("my", "APPGE")]
ADJS = ["old", "happy", "big", "small", "good", "red", "tired"]
DEGS = ["very", "quite", "rather"]
ADVS = ["quickly", "slowly", "often", "loudly", "quietly"]
FRONT_ADVS = ["yesterday", "today", "suddenly"]
PREPS = ["in", "on", "near", "under", "with"]
INTRANS_Z = ["laughs", "sleeps", "barks", "runs", "sings"]
INTRANS_D = ["laughed", "slept", "ran", "cried", "left", "sang"]
TRANS_Z = ["sees", "reads", "likes", "wants", "finds"]
TRANS_D = ["saw", "read", "chased", "liked", "found", "wrote"]
BASE = ["see", "read", "leave", "sleep", "write", "find"]
SAY_D = ["said", "thought", "knew"]
MODALS = ["will", "can", "must"]
CONJ = ["and", "or"]


def leaf(label, word, tag):
    return (label, [(word, tag)])


def np_det(r, adj=False, deg=False):
    word, tag = r.choice(DETS)
    kids = [leaf("Det", word, tag)]
    if deg:
        kids.append(("AP", [leaf("Deg", r.choice(DEGS), "RG"), leaf("A", r.choice(ADJS), "JJ")]))
    elif adj:
        kids.append(leaf("A", r.choice(ADJS), "JJ"))
    kids.append(leaf("N", r.choice(NOUNS), "NN1"))
    return ("NP", kids)


def np_name(r):
    return leaf("NP", r.choice(NAMES), "NP1")


def np_subj(r):
    roll = r.random()
    if roll < 0.4:
        return np_name(r)
    if roll < 0.55:
        return leaf("NP", r.choice(SUBJ_PRON), "PPHS1")
    return np_det(r, adj=r.random() < 0.3)


def np_obj(r):
    roll = r.random()
    if roll < 0.3:
        return np_name(r)
    if roll < 0.4:
        return leaf("NP", r.choice(OBJ_PRON), "PPHO1")
    if roll < 0.5:
        return ("NP", [leaf("N", r.choice(PLURALS), "NN2")])
    return np_det(r, adj=r.random() < 0.25)


def pp(r):
    return ("PP", [leaf("P", r.choice(PREPS), "II"), np_det(r)])


def s(subj, vp):
    return ("S", [subj, vp])


# Constructions the seed grammar covers.
def g_intrans(r):
    return s(np_subj(r), ("VP", [leaf("V", r.choice(INTRANS_Z + INTRANS_D),
                                      "VVZ" if r.random() < 0.5 else "VVD")]))


def g_trans(r):
    v = r.choice(TRANS_D)
    return s(np_subj(r), ("VP", [leaf("V", v, "VVD"), np_obj(r)]))


def g_trans_z(r):
    return s(np_subj(r), ("VP", [leaf("V", r.choice(TRANS_Z), "VVZ"), np_obj(r)]))


def g_be_adj(r):
    return s(np_subj(r), ("VP", [leaf("V", "is", "VBZ"), ("AP", [leaf("A", r.choice(ADJS), "JJ")])]))


def g_be_pp(r):
    return s(np_subj(r), ("VP", [leaf("V", r.choice(["is", "was"]), r.choice(["VBZ", "VBDZ"])), pp(r)]))


def g_modal(r):
    inner = ("VP", [leaf("V", r.choice(BASE), "VV0"), np_obj(r)])
    return s(np_subj(r), ("VP", [leaf("V", r.choice(MODALS), "VM"), inner]))


def g_comp(r):
    inner = s(np_name(r), ("VP", [leaf("V", r.choice(INTRANS_D), "VVD")]))
    return s(np_subj(r), ("VP", [leaf("V", r.choice(SAY_D), "VVD"), ("CP", [leaf("C", "that", "CST"), inner])]))


def g_np_pp(r):
    subj = np_det(r)
    subj = ("NP", subj[1] + [pp(r)])
    return s(subj, ("VP", [leaf("V", r.choice(INTRANS_Z), "VVZ")]))


# Constructions that need at least one learnt rule.
def l_vp_pp(r):
    return s(np_subj(r), ("VP", [leaf("V", r.choice(INTRANS_D), "VVD"), pp(r)]))


def l_vp_adv(r):
    return s(np_subj(r), ("VP", [leaf("V", r.choice(INTRANS_Z), "VVZ"), leaf("Adv", r.choice(ADVS), "RR")]))


def l_trans_adv(r):
    return s(np_name(r), ("VP", [leaf("V", r.choice(TRANS_D), "VVD"), np_det(r), leaf("Adv", r.choice(ADVS), "RR")]))


def l_deg_subj(r):
    return s(np_det(r, deg=True), ("VP", [leaf("V", r.choice(INTRANS_Z), "VVZ")]))


def l_be_deg(r):
    ap = ("AP", [leaf("Deg", r.choice(DEGS), "RG"), leaf("A", r.choice(ADJS), "JJ")])
    return s(np_subj(r), ("VP", [leaf("V", "is", "VBZ"), ap]))


def l_np_coord(r):
    subj = ("NP", [np_name(r), leaf("Conj", r.choice(CONJ), "CC"), np_name(r)])
    return s(subj, ("VP", [leaf("V", r.choice(INTRANS_D), "VVD")]))


def l_front_adv(r):
    return ("S", [leaf("Adv", r.choice(FRONT_ADVS), "RR"), np_name(r),
                  ("VP", [leaf("V", r.choice(INTRANS_D), "VVD")])])


GRAMMATICAL = [(g_intrans, 16), (g_trans, 14), (g_trans_z, 8), (g_be_adj, 8), (g_be_pp, 6),
               (g_modal, 8), (g_comp, 6), (g_np_pp, 10)]
NEEDS_LEARNING = [(l_vp_pp, 14), (l_vp_adv, 12), (l_trans_adv, 6), (l_deg_subj, 8),
                  (l_be_deg, 8), (l_np_coord, 8), (l_front_adv, 8)]


def leaves(t):
    label, kids = t
    out = []
    for k in kids:
        if isinstance(k[1], str):
            out.append(k)
        else:
            out.extend(leaves(k))
    return out


def bracket(t):
    label, kids = t
    parts = []
    for k in kids:
        parts.append(k[0] if isinstance(k[1], str) else bracket(k))
    return "(" + label + " " + " ".join(parts) + ")"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/corpus")
    r = random.Random(SEED)
    plan = []
    for fn, n in GRAMMATICAL + NEEDS_LEARNING:
        plan.extend([fn] * n)
    assert len(plan) == SIZE, len(plan)
    r.shuffle(plan)
    seen = set()
    records = []
    for fn in plan:
        while True:
            tree = fn(r)
            words = leaves(tree)
            key = " ".join(w for w, _ in words)
            if key not in seen:
                seen.add(key)
                break
        records.append(("s%03d" % (len(records) + 1), tree, words))

    header = ("# Synthetic corpus generated by tools/gen_corpus.py (seed %d).\n"
              "# Invented sentences over a CLAWS2-style tag subset; not drawn from any\n"
              "# published treebank.\n") % SEED
    with open(out / "synthetic.tag", "w") as f:
        f.write(header)
        for sid, _, words in records:
            f.write("#%s %s\n" % (sid, " ".join("%s_%s" % w for w in words)))
    with open(out / "synthetic.tre", "w") as f:
        f.write(header + "# Benchmark trees are deliberately shallow.\n")
        for sid, tree, _ in records:
            f.write("#%s %s\n" % (sid, bracket(tree)))

    ids = [sid for sid, _, _ in records]
    order = ids[:]
    r.shuffle(order)
    parts = {"pretrain": order[:19], "train": order[19:79], "test": order[79:139]}
    with open(out / "synthetic.split", "w") as f:
        f.write(header)
        for name in ("pretrain", "train", "test"):
            f.write("[%s]\n" % name)
            for sid in sorted(parts[name]):
                f.write(sid + "\n")


if __name__ == "__main__":
    main()
