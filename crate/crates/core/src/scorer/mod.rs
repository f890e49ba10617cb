//! Rule-based lexicon sentiment-intensity scoring.
//!
//! [`score`] turns a text into a `(positive, negative, neutral)` proportion
//! triple using valence lookups and the reference heuristics: boosters and
//! dampeners, negation within three preceding tokens, ALL-CAPS emphasis,
//! punctuation emphasis and "but" clause reweighting.

mod constants;
mod lexicon;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use constants::*;
pub use lexicon::{LexiconError, LineDiagnostic, SentimentLexicon, VALENCE_RANGE};

/// Positive, negative and neutral intensities, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreTriple {
    pub positive: f64,
    pub negative: f64,
    pub neutral: f64,
}

impl ScoreTriple {
    pub const NEUTRAL: ScoreTriple = ScoreTriple {
        positive: 0.0,
        negative: 0.0,
        neutral: 1.0,
    };

    pub fn new(positive: f64, negative: f64, neutral: f64) -> Self {
        Self {
            positive,
            negative,
            neutral,
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.positive, self.negative, self.neutral]
    }

    pub fn sum(&self) -> f64 {
        self.positive + self.negative + self.neutral
    }

    /// True when every component lies in `[0, 1]`.
    pub fn in_unit_range(&self) -> bool {
        self.components().iter().all(|c| (0.0..=1.0).contains(c))
    }

    /// Rounds each component to `places` decimals (display precision of the
    /// reference tool is 3).
    pub fn rounded(&self, places: i32) -> Self {
        let f = 10f64.powi(places);
        let r = |x: f64| (x * f).round() / f;
        Self::new(r(self.positive), r(self.negative), r(self.neutral))
    }
}

/// Full scorer output: the triple plus the normalized compound score.
///
/// The compound value is diagnostic only; nothing downstream consumes it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Polarity {
    pub triple: ScoreTriple,
    pub compound: f64,
}

/// Loads a lexicon file; malformed lines come back as diagnostics.
pub fn load_lexicon(
    path: impl AsRef<std::path::Path>,
) -> Result<(SentimentLexicon, Vec<LineDiagnostic>), LexiconError> {
    SentimentLexicon::from_file(path)
}

/// Scores `text`, returning the proportion triple.
///
/// Empty input and input with no scoreable tokens yield `(0, 0, 1)`.
pub fn score(text: &str, lex: &SentimentLexicon) -> ScoreTriple {
    polarity(text, lex).triple
}

/// Scores `text`, returning the triple and compound score.
pub fn polarity(text: &str, lex: &SentimentLexicon) -> Polarity {
    let tokens = Tokens::new(text);
    let mut sentiments: Vec<f64> = Vec::with_capacity(tokens.words.len());

    // The reference resolves each token to the index of its first occurrence,
    // so repeated words share one context window.
    let mut first_index: HashMap<&str, usize> = HashMap::new();
    for (i, w) in tokens.words.iter().enumerate() {
        first_index.entry(w.as_str()).or_insert(i);
    }

    for item in &tokens.words {
        let i = first_index[item.as_str()];
        let lower = &tokens.lower[i];
        let kind_of = i + 1 < tokens.len() && lower == "kind" && tokens.lower[i + 1] == "of";
        if kind_of || lex.booster(lower).is_some() {
            sentiments.push(0.0);
            continue;
        }
        sentiments.push(token_valence(&tokens, i, lex));
    }

    but_check(&tokens, &mut sentiments);
    score_valence(&sentiments, text)
}

struct Tokens {
    words: Vec<String>,
    lower: Vec<String>,
    cap_differential: bool,
}

impl Tokens {
    fn new(text: &str) -> Self {
        let no_punct: String = text.chars().filter(|c| !c.is_ascii_punctuation()).collect();
        let bare_words: std::collections::HashSet<&str> = no_punct
            .split_whitespace()
            .filter(|w| w.chars().count() > 1)
            .collect();

        let words: Vec<String> = text
            .split_whitespace()
            .filter(|w| w.chars().count() > 1)
            .map(|w| strip_affix(w, &bare_words).to_string())
            .collect();
        let lower = words.iter().map(|w| w.to_lowercase()).collect();
        let caps = words.iter().filter(|w| is_all_caps(w)).count();
        let differential = words.len() - caps;
        Self {
            cap_differential: differential > 0 && differential < words.len(),
            words,
            lower,
        }
    }

    fn len(&self) -> usize {
        self.words.len()
    }
}

/// Peels one leading or trailing punctuation affix when the remainder is a
/// bare word of the text. Emoticons and contractions survive untouched.
fn strip_affix<'a>(token: &'a str, bare_words: &std::collections::HashSet<&str>) -> &'a str {
    for affix in PUNCTUATION_AFFIXES {
        if let Some(rest) = token.strip_prefix(affix) {
            if bare_words.contains(rest) {
                return rest;
            }
        }
        if let Some(rest) = token.strip_suffix(affix) {
            if bare_words.contains(rest) {
                return rest;
            }
        }
    }
    token
}

/// At least one cased character and no lowercase ones.
fn is_all_caps(word: &str) -> bool {
    let mut cased = false;
    for c in word.chars() {
        if c.is_lowercase() {
            return false;
        }
        if c.is_uppercase() {
            cased = true;
        }
    }
    cased
}

fn is_negated(word: &str, lex: &SentimentLexicon) -> bool {
    let lower = word.to_lowercase();
    lex.is_negator(&lower) || lower.contains("n't")
}

fn token_valence(tokens: &Tokens, i: usize, lex: &SentimentLexicon) -> f64 {
    let Some(mut valence) = lex.valence(&tokens.lower[i]) else {
        return 0.0;
    };
    let words = &tokens.words;

    if is_all_caps(&words[i]) && tokens.cap_differential {
        if valence > 0.0 {
            valence += CAPS_INCREMENT;
        } else {
            valence -= CAPS_INCREMENT;
        }
    }

    for back in 0..3 {
        if i > back && !lex.contains(&tokens.lower[i - (back + 1)]) {
            let mut s = scalar_inc_dec(
                &words[i - (back + 1)],
                valence,
                tokens.cap_differential,
                lex,
            );
            if back == 1 && s != 0.0 {
                s *= BOOSTER_DECAY_2;
            }
            if back == 2 && s != 0.0 {
                s *= BOOSTER_DECAY_3;
            }
            valence += s;
            valence = never_check(valence, words, back, i, lex);
            if back == 2 {
                valence = idioms_check(valence, words, i, lex);
            }
        }
    }

    least_check(valence, tokens, i, lex)
}

fn scalar_inc_dec(word: &str, valence: f64, cap_differential: bool, lex: &SentimentLexicon) -> f64 {
    let Some(mut scalar) = lex.booster(&word.to_lowercase()) else {
        return 0.0;
    };
    if valence < 0.0 {
        scalar *= -1.0;
    }
    if is_all_caps(word) && cap_differential {
        if valence > 0.0 {
            scalar += CAPS_INCREMENT;
        } else {
            scalar -= CAPS_INCREMENT;
        }
    }
    scalar
}

fn never_check(
    valence: f64,
    words: &[String],
    back: usize,
    i: usize,
    lex: &SentimentLexicon,
) -> f64 {
    let so_or_this = |w: &str| w == "so" || w == "this";
    match back {
        0 => {
            if is_negated(&words[i - 1], lex) {
                return valence * NEGATION_SCALAR;
            }
        }
        1 => {
            if words[i - 2] == "never" && so_or_this(&words[i - 1]) {
                return valence * NEVER_SO_2;
            } else if is_negated(&words[i - 2], lex) {
                return valence * NEGATION_SCALAR;
            }
        }
        _ => {
            if (words[i - 3] == "never" && so_or_this(&words[i - 2])) || so_or_this(&words[i - 1]) {
                return valence * NEVER_SO_3;
            } else if is_negated(&words[i - 3], lex) {
                return valence * NEGATION_SCALAR;
            }
        }
    }
    valence
}

fn idiom(phrase: &str) -> Option<f64> {
    IDIOMS.iter().find(|(p, _)| *p == phrase).map(|(_, v)| *v)
}

fn idioms_check(mut valence: f64, w: &[String], i: usize, lex: &SentimentLexicon) -> f64 {
    let one_zero = format!("{} {}", w[i - 1], w[i]);
    let two_one_zero = format!("{} {} {}", w[i - 2], w[i - 1], w[i]);
    let two_one = format!("{} {}", w[i - 2], w[i - 1]);
    let three_two_one = format!("{} {} {}", w[i - 3], w[i - 2], w[i - 1]);
    let three_two = format!("{} {}", w[i - 3], w[i - 2]);

    for seq in [
        &one_zero,
        &two_one_zero,
        &two_one,
        &three_two_one,
        &three_two,
    ] {
        if let Some(v) = idiom(seq) {
            valence = v;
            break;
        }
    }
    if w.len() - 1 > i {
        if let Some(v) = idiom(&format!("{} {}", w[i], w[i + 1])) {
            valence = v;
        }
    }
    if w.len() - 1 > i + 1 {
        if let Some(v) = idiom(&format!("{} {} {}", w[i], w[i + 1], w[i + 2])) {
            valence = v;
        }
    }
    if lex.booster(&three_two).is_some() || lex.booster(&two_one).is_some() {
        valence += DAMPENER_INCREMENT;
    }
    valence
}

fn least_check(valence: f64, tokens: &Tokens, i: usize, lex: &SentimentLexicon) -> f64 {
    let lower = &tokens.lower;
    if i > 1 && !lex.contains(&lower[i - 1]) && lower[i - 1] == "least" {
        if lower[i - 2] != "at" && lower[i - 2] != "very" {
            return valence * NEGATION_SCALAR;
        }
    } else if i > 0 && !lex.contains(&lower[i - 1]) && lower[i - 1] == "least" {
        return valence * NEGATION_SCALAR;
    }
    valence
}

fn but_check(tokens: &Tokens, sentiments: &mut [f64]) {
    if let Some(bi) = tokens.lower.iter().position(|w| w == "but") {
        for (idx, s) in sentiments.iter_mut().enumerate() {
            if idx < bi {
                *s *= BUT_BEFORE;
            } else if idx > bi {
                *s *= BUT_AFTER;
            }
        }
    }
}

fn punctuation_emphasis(text: &str) -> f64 {
    let bangs = text.matches('!').count().min(EXCLAMATION_CAP);
    let ep = bangs as f64 * EXCLAMATION_INCREMENT;
    let questions = text.matches('?').count();
    let qm = match questions {
        0 | 1 => 0.0,
        2 | 3 => questions as f64 * QUESTION_INCREMENT,
        _ => QUESTION_CAP_VALUE,
    };
    ep + qm
}

fn score_valence(sentiments: &[f64], text: &str) -> Polarity {
    if sentiments.is_empty() {
        return Polarity {
            triple: ScoreTriple::NEUTRAL,
            compound: 0.0,
        };
    }
    let emphasis = punctuation_emphasis(text);
    let mut sum: f64 = sentiments.iter().sum();
    if sum > 0.0 {
        sum += emphasis;
    } else if sum < 0.0 {
        sum -= emphasis;
    }
    let compound = sum / (sum * sum + COMPOUND_ALPHA).sqrt();

    let mut pos_sum = 0.0;
    let mut neg_sum = 0.0;
    let mut neu_count = 0usize;
    for &s in sentiments {
        if s > 0.0 {
            pos_sum += s + 1.0;
        }
        if s < 0.0 {
            neg_sum += s - 1.0;
        }
        if s == 0.0 {
            neu_count += 1;
        }
    }
    if pos_sum > neg_sum.abs() {
        pos_sum += emphasis;
    } else if pos_sum < neg_sum.abs() {
        neg_sum -= emphasis;
    }
    let total = pos_sum + neg_sum.abs() + neu_count as f64;
    Polarity {
        triple: ScoreTriple {
            positive: (pos_sum / total).abs(),
            negative: (neg_sum / total).abs(),
            neutral: (neu_count as f64 / total).abs(),
        },
        compound,
    }
}
