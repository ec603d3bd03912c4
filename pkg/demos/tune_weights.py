# coding: utf-8

# Evolving scoring weights against a gold segmentation.
#
# The tree segmenter scores every possible cut by the dependency edge it
# severs; the weights deciding which edges are good places to breathe are
# tuned here by a small genetic algorithm, using the bundled hand-made
# gold segmentation as the teacher.

from importlib import resources

from rhesis import (
    EvoConfig,
    ScoringWeights,
    SpanConfig,
    align_gold,
    evolve,
    parse_conllu,
    parse_gold,
    rhesis_precision,
    segment_best,
    write_weights,
)

data = resources.files("rhesis").joinpath("data")
sentences = parse_conllu(data.joinpath("fixture.conllu").read_bytes())
corpus = align_gold(sentences, parse_gold(data.joinpath("fixture.rhz").read_bytes()))
span = SpanConfig()

# Where the untuned weights land: w_dep=1 and an empty table treats every
# dependency label the same, so cuts fall in syntactically arbitrary spots.
gold = [entry.gold for entry in corpus]
default_segs = [segment_best(s, ScoringWeights(), span) for s in sentences]
print("precision with default weights: %.3f" % rhesis_precision(default_segs, gold)[0])

# A short run is enough to see the climb; the seed makes it repeatable.
cfg = EvoConfig(population=24, generations=20, seed=3)
best, trace = evolve(corpus, cfg, span)
print("fitness trace:", " ".join("%.2f" % f for f in trace))

tuned = best.decode()
tuned_segs = [segment_best(s, tuned, span) for s in sentences]
print("precision with tuned weights:   %.3f" % rhesis_precision(tuned_segs, gold)[0])

# The learned table is ordinary JSON; the CLI's `--weights` flag reads it.
write_weights("tuned-weights.json", tuned)
print("\nwrote tuned-weights.json")
interesting = sorted(tuned.deprel_weights.items(), key=lambda kv: -abs(kv[1]))[:8]
for label, value in interesting:
    print(f"  {label:<12} {value:+.2f}")
