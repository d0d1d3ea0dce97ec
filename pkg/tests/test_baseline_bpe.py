import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aksaratok.baseline_bpe import bpe_encode, bytes_to_unicode, load_bpe
from aksaratok.errors import InconsistentModel, MalformedMerges, MalformedVocab


def test_published_vocab_size(gpt2):
    assert len(gpt2) == 50257


def test_known_encodings(gpt2):
    assert gpt2("Hello world").ids == [15496, 995]
    assert gpt2(" the").ids == [262]
    assert gpt2("").ids == []


def test_bytes_to_unicode_is_a_bijection():
    table = bytes_to_unicode()
    assert sorted(table) == list(range(256))
    assert len(set(table.values())) == 256
    assert table[ord("A")] == "A" and table[ord(" ")] == "Ġ"


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=30))
def test_decode_inverts_encode(gpt2, text):
    seq = gpt2(text)
    assert gpt2.decode(seq.ids) == text
    assert len(seq.ids) <= len(text.encode("utf-8"))


def _byte_only_model(tmp_path, merges=""):
    table = bytes_to_unicode()
    vocab = {table[b]: b for b in range(256)}
    for line in merges.splitlines():
        a, b = line.split()
        vocab[a + b] = len(vocab)
    (tmp_path / "v.json").write_text(json.dumps(vocab), encoding="utf-8")
    (tmp_path / "m.txt").write_text("#version: 0.2\n" + merges, encoding="utf-8")
    return load_bpe(tmp_path / "v.json", tmp_path / "m.txt")


def test_no_merges_gives_one_token_per_byte(tmp_path):
    model = _byte_only_model(tmp_path)
    text = "aé漢"
    assert model(text).ids == list(text.encode("utf-8"))


def test_merge_priority(tmp_path):
    # "a b" ranks before "b c", so "abc" -> ab + c
    model = _byte_only_model(tmp_path, "a b\nb c\n")
    assert model("abc").surface == ["ab", "c"]
    assert bpe_encode("bc", model).surface == ["bc"]


def test_bad_vocab_json(tmp_path):
    (tmp_path / "v.json").write_text("{not json", encoding="utf-8")
    (tmp_path / "m.txt").write_text("", encoding="utf-8")
    with pytest.raises(MalformedVocab):
        load_bpe(tmp_path / "v.json", tmp_path / "m.txt")
    (tmp_path / "v.json").write_text('{"a": 0, "b": 0}', encoding="utf-8")
    with pytest.raises(MalformedVocab):
        load_bpe(tmp_path / "v.json", tmp_path / "m.txt")


def test_bad_merges(tmp_path):
    _byte_only_model(tmp_path)
    (tmp_path / "m.txt").write_text("a b c\n", encoding="utf-8")
    with pytest.raises(MalformedMerges):
        load_bpe(tmp_path / "v.json", tmp_path / "m.txt")


def test_inconsistent_model(tmp_path):
    _byte_only_model(tmp_path)
    (tmp_path / "m.txt").write_text("x y\n", encoding="utf-8")
    with pytest.raises(InconsistentModel):
        load_bpe(tmp_path / "v.json", tmp_path / "m.txt")
    (tmp_path / "v.json").write_text('{"a": 0}', encoding="utf-8")
    (tmp_path / "m.txt").write_text("", encoding="utf-8")
    with pytest.raises(InconsistentModel):
        load_bpe(tmp_path / "v.json", tmp_path / "m.txt")
