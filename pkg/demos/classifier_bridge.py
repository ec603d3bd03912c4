# coding: utf-8

# Round trip through the classifier interface, without a classifier.
#
# Training side: dump labeled candidate spans to TSV plus a manifest, the
# files a fine-tuning job would consume.  Inference side: invent a score
# table (gold spans get high probabilities, everything else low, a seeded
# RNG adds jitter) and let segment_by_scores rebuild the segmentation.

import json
import random
from importlib import resources

from rhesis import (
    ScoreTable,
    SpanConfig,
    align_gold,
    candidates_to_tsv,
    export_candidates,
    finetune_manifest,
    load_scores,
    parse_conllu,
    parse_gold,
    segment_by_scores,
)

data = resources.files("rhesis").joinpath("data")
sentences = parse_conllu(data.joinpath("fixture.conllu").read_bytes())
corpus = align_gold(sentences, parse_gold(data.joinpath("fixture.rhz").read_bytes()))

span = SpanConfig()

# --- training export ------------------------------------------------------

examples = export_candidates(corpus, negatives_per_positive=4, seed=7, span=span)
positives = sum(1 for ex in examples if ex.label == 1)
print("export:", len(examples), "candidates,", positives, "positive")

tsv = candidates_to_tsv(examples)
print("tsv header:", tsv.split("\n", 1)[0])
for line in tsv.split("\n")[1:4]:
    print(" ", line[:100])

manifest = finetune_manifest(
    negatives_per_positive=4,
    seed=7,
    positives=positives,
    negatives=len(examples) - positives,
)
print("manifest:", json.dumps({k: manifest[k] for k in
                               ("batch_size", "learning_rate", "epochs",
                                "max_seq_length", "holdout_fraction")}))

# --- pretend inference ----------------------------------------------------

rng = random.Random(7)
gold_spans = {(e.sentence.sent_id, start, end)
              for e in corpus for start, end in e.gold.spans()}
probs = {}
for ex in examples:
    key = (ex.sentence_id, ex.start, ex.end)
    if key in gold_spans:
        probs[key] = 0.85 + 0.14 * rng.random()
    else:
        probs[key] = 0.01 + 0.20 * rng.random()
table = ScoreTable(probabilities=probs)

# The same table survives a trip through the TSV loader.
dump = "".join(f"{sid}\t{s}\t{e}\t{p}\n" for (sid, s, e), p in probs.items())
reloaded = load_scores(dump)
assert len(reloaded) == len(table)

exact = 0
for entry in corpus:
    seg = segment_by_scores(entry.sentence, reloaded, span)
    if seg.spans() == entry.gold.spans():
        exact += 1
print(f"recovered {exact}/{len(corpus)} gold segmentations from scores")

demo = corpus.entries[0]
seg = segment_by_scores(demo.sentence, reloaded, span)
for r in seg.rhesis:
    print("  |", r.text)
