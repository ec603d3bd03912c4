"""
Segmenting a parsed story into units of meaning
===============================================

The bundled fixture is a small French tale, dependency-parsed by hand.
This walks the rule cascade over it: punctuation first, then clause
onsets, priority prepositions, chunks, remaining prepositions, words —
stopping at the first level that brings every piece under the span.
"""

from importlib import resources

from rhesis import CascadeConfig, SpanConfig, cascade_segment, parse_conllu, regroup

data = resources.files("rhesis").joinpath("data")
sentences = parse_conllu(data.joinpath("fixture.conllu").read_bytes())
print(f"{len(sentences)} sentences in the fixture\n")

# A subtitle-like budget: at most 45 characters per unit, 32 preferred.
config = CascadeConfig(span=SpanConfig(max_chars=45, target_chars=32))

for sentence in sentences[:6]:
    raw = cascade_segment(sentence, config)
    # the cascade cuts eagerly; regrouping merges neighbours back together
    # while they fit, so short fragments ("but", "chez lui") get absorbed
    seg = regroup(sentence, raw, config)
    print(sentence.text)
    for r in seg.rhesis:
        print(f"  [{len(r.text):>2} chars] {r.text}")
    print()

# The same sentence under a tighter budget splits further.
tight = CascadeConfig(span=SpanConfig(max_chars=24, target_chars=16))
sentence = sentences[1]
print(f"tight budget on: {sentence.text}")
for r in regroup(sentence, cascade_segment(sentence, tight), tight).rhesis:
    print(f"  [{len(r.text):>2} chars] {r.text}")
