"""Regenerate tests/data/bpe_golden.jsonl from the reference GPT-2 tokenizers.

Run once by hand; the output is committed. Needs ``transformers`` and
``tokenizers``, which the package itself does not depend on.

    python scripts/make_bpe_golden.py
"""

import json
from pathlib import Path

from transformers import GPT2Tokenizer, GPT2TokenizerFast

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
MODEL = DATA / "gpt2"

EXTRA = [
    "",
    " hello",
    "hello",
    "Hello, world!",
    "makan",
    " makan",
    "Makan",
    "I'm sure they'll say it's fine, we've done what you'd expect.",
    "DON'T SHOUT",
    "tab\tseparated\tvalues",
    "trailing spaces   ",
    "   leading spaces",
    "multiple     inner   spaces",
    "line one\nline two\n\nline four",
    "numbers 12345 and 3.14159 and 1,000,000",
    "mixed123abc456",
    "email: someone@example.com, url: https://example.org/path?q=1",
    "punctuation!!! ??? ... ---",
    "(parentheses) [brackets] {braces}",
    "café naïve résumé coöperate",
    "goréng, poé, éta, paré",
    "Straße und Größe",
    "Ελληνικά κείμενα",
    "Русский текст",
    "中文文本测试",
    "日本語のテキスト",
    "한국어 텍스트",
    "ꦲꦏ꧀ꦱꦫꦗꦮ",
    "ᮃᮊ᮪ᮞᮛ ᮞᮥᮔ᮪ᮓ",
    "ᨕᨀᨔᨑ ᨒᨚᨈᨑ",
    "emoji 😀🎉👍🏽 done",
    "family 👨‍👩‍👧‍👦",
    "math ∑ ∫ √ ≤ ≥ ≠",
    "quotes “curly” ‘single’ «guillemets»",
    "dash – and — em",
    "Rp 15.000,00 per porsi",
    "Anak-anak bermain-main di rumah-rumah.",
    "nyanyi ngeri khusus syarat dharma",
    "struktur instruksi ekstra skripsi",
    "    ",
    " non-breaking space",
    "zero​width",
]


def main():
    slow = GPT2Tokenizer(str(MODEL / "vocab.json"), str(MODEL / "merges.txt"))
    fast = GPT2TokenizerFast(str(MODEL / "vocab.json"), str(MODEL / "merges.txt"))
    assert len(slow) == 50257, len(slow)
    texts = list(EXTRA)
    for name in ("sentences_id.txt", "sentences_en.txt"):
        texts += (DATA / name).read_text(encoding="utf-8").splitlines()
    rows = []
    for text in texts:
        ids = slow.encode(text)
        assert ids == fast.encode(text), text
        rows.append({"text": text, "ids": ids})
    with open(DATA / "bpe_golden.jsonl", "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {len(rows)} lines")


if __name__ == "__main__":
    main()
