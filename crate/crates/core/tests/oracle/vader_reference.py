"""Freeze reference outputs for the probe set.

Runs NLTK's SentimentIntensityAnalyzer (unrounded) over every probe sentence,
both on the raw text and on the text produced by a straightforward Python
version of the cleaning pipeline (classic Porter from NLTK).

Usage: python3 vader_reference.py > ../data/vader_probe_expected.tsv
Requires nltk with the vader lexicon installed under nltk_data.
"""
import re
import string
import sys

import nltk.sentiment.vader as vader
from nltk.stem import PorterStemmer

HERE = __file__.rsplit("/", 1)[0]
STOP = {
    l.strip()
    for l in open(f"{HERE}/../../data/stopwords_en.txt", encoding="utf-8")
    if l.strip() and not l.startswith("#")
}
STEM = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
PUNCT = re.compile("[%s]" % re.escape(string.punctuation))


def clean(text):
    t = text.lower()
    t = re.sub(r"\[.*?\]", "", t)
    t = re.sub(r"https?://\S+|www\.\S+", "", t)
    t = re.sub(r"<.*?>", "", t)
    t = PUNCT.sub("", t)
    t = t.replace("\n", " ")
    toks = [w for w in t.split() if not any(c.isnumeric() for c in w)]
    toks = [w for w in toks if w not in STOP]
    toks = [STEM.stem(w) for w in toks]
    return " ".join(toks)


def main():
    unrounded = vader.SentimentIntensityAnalyzer()
    vader.round = lambda x, n=None: x
    out = sys.stdout
    out.write("mode\tindex\tpos\tneg\tneu\tcompound\tcleaned\n")
    sents = open(f"{HERE}/probe_sentences.txt", encoding="utf-8").read().splitlines()
    for i, s in enumerate(sents):
        for mode, text in (("raw", s), ("clean", clean(s))):
            r = unrounded.polarity_scores(text)
            out.write(
                f"{mode}\t{i}\t{r['pos']!r}\t{r['neg']!r}\t{r['neu']!r}\t{r['compound']!r}\t{clean(s) if mode == 'clean' else ''}\n"
            )


if __name__ == "__main__":
    main()
