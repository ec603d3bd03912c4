import warnings
from importlib import resources

from rhesis import (
    CascadeConfig,
    RenderOptions,
    SpanConfig,
    cascade_segment,
    parse_conllu,
    regroup,
    render,
)

data = resources.files("rhesis").joinpath("data")
sentences = parse_conllu(data.joinpath("fixture.conllu").read_bytes())[:2]

cfg = CascadeConfig(span=SpanConfig(34, 24))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    segs = [regroup(s, cascade_segment(s, cfg), cfg) for s in sentences]

print("--- txt: one rhesis per line, sentences separated by blanks")
print(render(segs, RenderOptions("txt")))

print("--- records: JSON Lines, one object per rhesis")
print(render(segs, RenderOptions("records")))

print("--- html: nowrap spans inside sentence blocks, addressable ids")
print(render(segs, RenderOptions("html", html_class_prefix="unit", include_ids=True)))
