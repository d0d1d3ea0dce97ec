"""Exit criteria. Each test carries an ``acceptance`` marker; conftest prints one
PASS/FAIL/SKIP line per criterion at the end of the run."""

import json
import os
import random
import time
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aksaratok import (
    AlignmentParams,
    PhonologyConfig,
    SyllableCensus,
    SyllableTokenizer,
    fit_power_law,
    segment,
    similarity,
    smith_waterman,
    syllables,
    tpc,
)
from aksaratok.cli import main
from aksaratok.corpus import read_lines
from oracles import all_sequences, brute_force_local_alignment, exhaustive_best_scores, sample_power_law_counts

CFG = PhonologyConfig.default()
DATA = Path(__file__).parent / "data"

# Hand-traced splits. Comments name the rule that decides the word.
GOLDEN = {
    # plain CV / CVC
    "makan": ["ma", "kan"],
    "kopi": ["ko", "pi"],
    "jalan": ["ja", "lan"],
    "sepatu": ["se", "pa", "tu"],
    "bahasa": ["ba", "ha", "sa"],
    "sekolah": ["se", "ko", "lah"],  # h coda during the scan
    "rumah": ["ru", "mah"],
    "hatur": ["ha", "tur"],  # Sundanese, r coda
    "turu": ["tu", "ru"],  # Javanese
    "bade": ["ba", "de"],  # Sundanese
    # virama merge of an isolated consonant
    "bantu": ["ban", "tu"],
    "sunda": ["sun", "da"],
    "sampeyan": ["sam", "pe", "yan"],  # Javanese
    "abdi": ["ab", "di"],  # Sundanese, onset-less predecessor
    "kerja": ["ker", "ja"],
    "teks": ["teks"],  # two trailing consonants collapse
    "wong": ["wong"],  # Javanese, ng coda at word end
    # digraphs
    "nyanyi": ["nya", "nyi"],
    "nyamuk": ["nya", "muk"],
    "banyu": ["ba", "nyu"],  # Javanese
    "khusus": ["khu", "sus"],
    "syarat": ["sya", "rat"],
    "gedhe": ["ge", "dhe"],  # Javanese dh
    "dharma": ["dhar", "ma"],
    "ngopo": ["ngo", "po"],  # Javanese, word-initial ng
    "ngaran": ["nga", "ran"],  # Sundanese
    "bangun": ["ba", "ngun"],  # ng opens the next syllable before a vowel
    "mangan": ["ma", "ngan"],  # Javanese
    "sangat": ["sa", "ngat"],
    "tinggi": ["ting", "gi"],  # ng coda before a consonant
    "angka": ["ang", "ka"],
    # medial clusters
    "putra": ["pu", "tra"],
    "putri": ["pu", "tri"],
    "program": ["pro", "gram"],
    "kraton": ["kra", "ton"],  # Javanese
    "aplikasi": ["a", "pli", "ka", "si"],
    "kwitansi": ["kwi", "tan", "si"],
    "prangko": ["prang", "ko"],
    "blangko": ["blang", "ko"],
    "sastra": ["sas", "tra"],
    # cluster merge into the next onset
    "struktur": ["struk", "tur"],
    "skripsi": ["skrip", "si"],
    "ekstra": ["eks", "tra"],
    "instruksi": ["ins", "truk", "si"],
    # vowel sequences
    "biaya": ["bi", "a", "ya"],
    "pantai": ["pan", "ta", "i"],
    "cai": ["ca", "i"],  # Sundanese
    "leumpang": ["le", "um", "pang"],  # Sundanese eu written as two vowels
    "indonesia": ["in", "do", "ne", "si", "a"],
    "omah": ["o", "mah"],  # Javanese
    "imah": ["i", "mah"],  # Sundanese
    "urang": ["u", "rang"],  # Sundanese
    # all-consonant words
    "bcd": ["bcd"],
    "pst": ["pst"],
}


@pytest.mark.acceptance(1, "segmentation golden suite")
def test_1_golden_segmentation():
    assert len(GOLDEN) >= 40
    start = time.perf_counter()
    got = {w: syllables(w, CFG) for w in GOLDEN}
    elapsed = time.perf_counter() - start
    wrong = {w: (got[w], exp) for w, exp in GOLDEN.items() if got[w] != exp}
    assert not wrong
    assert elapsed < 1.0


words = st.text(alphabet=CFG.alphabet, min_size=1, max_size=20)


@pytest.mark.acceptance(2, "character conservation, 10,000 words")
@settings(max_examples=10_000, deadline=None, database=None)
@given(words)
def test_2_character_conservation(word):
    assert "".join(s.surface for s in segment(word, CFG)) == word


@pytest.mark.acceptance(3, "nucleus totality, 10,000 words")
@settings(max_examples=10_000, deadline=None, database=None)
@given(words.filter(lambda w: any(c in CFG.vowels for c in w)))
def test_3_nucleus_totality(word):
    assert all(s.nucleus for s in segment(word, CFG))


@pytest.mark.acceptance(4, "Smith-Waterman equals exhaustive enumeration")
def test_4_smith_waterman_oracle():
    start = time.perf_counter()
    mismatches = 0
    checked = 0
    seqs = [[list(map(int, s)) for s in all_sequences(n)] for n in range(7)]
    for n in range(7):
        for m in range(7):
            expected = exhaustive_best_scores(n, m)
            for i, a in enumerate(seqs[n]):
                row = expected[i]
                for j, b in enumerate(seqs[m]):
                    checked += 1
                    if smith_waterman(a, b) != row[j]:
                        mismatches += 1
    elapsed = time.perf_counter() - start
    print(f"checked {checked} pairs in {elapsed:.1f}s, {mismatches} mismatches")
    assert checked == sum(3**n for n in range(7)) ** 2
    assert mismatches == 0
    assert elapsed < 60.0


def test_4_vectorized_oracle_agrees_with_plain_enumeration():
    rng = random.Random(4)
    for _ in range(200):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        a = [rng.randrange(3) for _ in range(n)]
        b = [rng.randrange(3) for _ in range(m)]
        idx_a = int("".join(map(str, a)) or "0", 3)
        idx_b = int("".join(map(str, b)) or "0", 3)
        assert exhaustive_best_scores(n, m)[idx_a, idx_b] == brute_force_local_alignment(a, b)


@pytest.mark.acceptance(5, "similarity bounds, identity and symmetry")
def test_5_similarity_bounds():
    rng = random.Random(5)
    params = AlignmentParams()
    for _ in range(1000):
        a = [rng.randrange(6) for _ in range(rng.randint(1, 40))]
        b = [rng.randrange(6) for _ in range(rng.randint(1, 40))]
        s = similarity(a, b, params)
        assert 0.0 <= s <= 1.0
        assert similarity(a, a, params) == 1.0
        assert smith_waterman(a, b, params) == smith_waterman(b, a, params)
        assert s == similarity(b, a, params)


@pytest.mark.acceptance(6, "TPC regime on demo vocabulary")
def test_6_tpc_regime(demo_vocab):
    tok = SyllableTokenizer(demo_vocab, CFG)

    def mean_tpc(path):
        values = [tpc(tok(line), len(tok.normalize(line))) for line in read_lines(path) if line.strip()]
        return sum(values) / len(values)

    indonesian = mean_tpc(DATA / "sentences_id.txt")
    english = mean_tpc(DATA / "sentences_en.txt")
    print(f"vocabulary size {len(demo_vocab)}, Indonesian TPC {indonesian:.4f}, English TPC {english:.4f}")
    assert 0.30 <= indonesian <= 0.55
    assert english > indonesian


@pytest.mark.acceptance(7, "power-law exponent recovery")
def test_7_power_law_recovery():
    draws = sample_power_law_counts(1.87, 100_000, seed=7)
    cen = SyllableCensus({f"s{i}": int(c) for i, c in enumerate(draws)})
    fit = fit_power_law(cen)
    print(f"alpha {fit.alpha:.4f}, beta {fit.beta:.4f}, x_min {fit.x_min}")
    assert abs(fit.alpha - 1.87) <= 0.1
    assert fit.beta == pytest.approx(1.0 / (fit.alpha - 1.0))


@pytest.mark.acceptance(8, "byte-level BPE golden equality")
def test_8_bpe_golden(gpt2):
    lines = [json.loads(line) for line in (DATA / "bpe_golden.jsonl").read_text(encoding="utf-8").splitlines()]
    assert len(lines) >= 100
    bad = [row["text"] for row in lines if list(gpt2(row["text"]).ids) != row["ids"]]
    assert not bad


def _regional_pairs(pairs):
    return [p for p in pairs if not {"ind", "eng", "id", "en"} & set(p)]


@pytest.mark.acceptance(9, "full pipeline on user-supplied NusaX and wordlist")
def test_9_full_pipeline(tmp_path):
    nusax = os.environ.get("NUSAX_DIR")
    wordlist = os.environ.get("KBBI_WORDLIST")
    if not (nusax and wordlist and Path(nusax).exists() and Path(wordlist).exists()):
        pytest.skip("set NUSAX_DIR and KBBI_WORDLIST to run the full pipeline")
    vocab = tmp_path / "vocab.txt"
    assert main(["train-vocab", wordlist, "--out", str(vocab)]) == 0
    syl, bpe, cmp = tmp_path / "syl.json", tmp_path / "bpe.json", tmp_path / "cmp.json"
    assert main(["align", nusax, "--scheme", "syllable", "--vocab", str(vocab), "--out", str(syl)]) == 0
    assert main(["align", nusax, "--scheme", "bpe", "--bpe-vocab", str(DATA / "gpt2" / "vocab.json"),
                 "--bpe-merges", str(DATA / "gpt2" / "merges.txt"), "--out", str(bpe)]) == 0
    assert main(["compare", str(syl), str(bpe), "--out", str(cmp)]) == 0
    result = json.loads(cmp.read_text(encoding="utf-8"))
    print(f"slope {result['slope']}, r {result['pearson_r']}, rho {result['spearman_rho']}")
    assert 1.05 <= result["slope"] <= 1.35
    assert result["pearson_r"] >= 0.98
    assert result["spearman_rho"] >= 0.97
    regional = _regional_pairs([(row["lang_a"], row["lang_b"]) for row in result["pairs"]])
    assert regional
    diffs = {(row["lang_a"], row["lang_b"]): row["diff"] for row in result["pairs"]}
    assert all(diffs[p] > 0 for p in regional)


def _strip_timestamp(path):
    data = json.loads(path.read_text(encoding="utf-8"))
    data.pop("timestamp")
    return data


@pytest.mark.acceptance(10, "byte-identical CLI re-runs")
def test_10_determinism(tmp_path, monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    corpus = str(DATA / "parallel_demo.tsv")
    vocab = tmp_path / "vocab.txt"
    bpe = ["--scheme", "bpe", "--bpe-vocab", str(DATA / "gpt2" / "vocab.json"),
           "--bpe-merges", str(DATA / "gpt2" / "merges.txt")]
    syl = ["--vocab", str(vocab)]
    runs = [
        (["train-vocab", "--out", str(vocab)], [vocab, Path(str(vocab) + ".meta.json")]),
        (["tokenize", str(DATA / "sentences_id.txt"), *syl, "--out", str(tmp_path / "tok.jsonl")], [tmp_path / "tok.jsonl"]),
        (["tokenize", str(DATA / "sentences_en.txt"), *bpe, "--out", str(tmp_path / "btok.jsonl")], [tmp_path / "btok.jsonl"]),
        (["tpc", corpus, *syl, "--out", str(tmp_path / "tpc.json")], [tmp_path / "tpc.json"]),
        (["tpc", corpus, *syl, "--format", "csv", "--out", str(tmp_path / "tpc.csv")], [tmp_path / "tpc.csv"]),
        (["align", corpus, *syl, "--out", str(tmp_path / "syl.json")], [tmp_path / "syl.json"]),
        (["align", corpus, *bpe, "--out", str(tmp_path / "bpe.json")], [tmp_path / "bpe.json"]),
        (["align", corpus, *bpe, "--format", "csv", "--out", str(tmp_path / "bpe.csv")], [tmp_path / "bpe.csv"]),
        (["compare", str(tmp_path / "syl.json"), str(tmp_path / "bpe.json"), "--out", str(tmp_path / "cmp.json")],
         [tmp_path / "cmp.json"]),
        (["compare", str(tmp_path / "syl.json"), str(tmp_path / "bpe.json"), "--format", "csv",
          "--out", str(tmp_path / "cmp.csv")], [tmp_path / "cmp.csv"]),
        (["segment", "makan", "struktur", "--out", str(tmp_path / "seg.txt")], [tmp_path / "seg.txt"]),
    ]
    for argv, outputs in runs:
        snapshots = []
        for _ in range(2):
            assert main(argv) == 0, argv
            out = outputs[0]
            manifest = Path(str(out) + ".manifest.json")
            snapshots.append(([p.read_bytes() for p in outputs], _strip_timestamp(manifest)))
        assert snapshots[0] == snapshots[1], argv[0]
