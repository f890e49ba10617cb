//! Heuristic constants of the reference valence-aware lexicon scorer.
//!
//! Values and word lists follow the published reference tool exactly; the
//! scorer is only reproducible when these are left untouched.

/// Increment applied by a booster word.
pub const BOOSTER_INCREMENT: f64 = 0.293;
/// Increment applied by a dampener word.
pub const DAMPENER_INCREMENT: f64 = -0.293;
/// Extra emphasis for an ALL-CAPS sentiment word in mixed-case text.
pub const CAPS_INCREMENT: f64 = 0.733;
/// Multiplier applied to a negated valence (flip and dampen).
pub const NEGATION_SCALAR: f64 = -0.74;

/// Booster weight decay for the word two positions back.
pub const BOOSTER_DECAY_2: f64 = 0.95;
/// Booster weight decay for the word three positions back.
pub const BOOSTER_DECAY_3: f64 = 0.9;
/// "never so/this X" amplification, two words back.
pub const NEVER_SO_2: f64 = 1.5;
/// "never so/this X" amplification, three words back.
pub const NEVER_SO_3: f64 = 1.25;

/// Clause weights around the first "but".
pub const BUT_BEFORE: f64 = 0.5;
pub const BUT_AFTER: f64 = 1.5;

/// Per-'!' emphasis and the number of marks that count.
pub const EXCLAMATION_INCREMENT: f64 = 0.292;
pub const EXCLAMATION_CAP: usize = 4;
/// Per-'?' emphasis (2 or 3 marks) and the flat value for 4+.
pub const QUESTION_INCREMENT: f64 = 0.18;
pub const QUESTION_CAP_VALUE: f64 = 0.96;

/// Normalization constant of the compound score.
pub const COMPOUND_ALPHA: f64 = 15.0;

/// Punctuation that may be peeled off one side of a token.
pub const PUNCTUATION_AFFIXES: &[&str] = &[
    ".", "!", "?", ",", ";", ":", "-", "'", "\"", "!!", "!!!", "??", "???", "?!?", "!?!", "?!?!",
    "!?!?",
];

pub const NEGATORS: &[&str] = &[
    "aint",
    "arent",
    "cannot",
    "cant",
    "couldnt",
    "darent",
    "didnt",
    "doesnt",
    "ain't",
    "aren't",
    "can't",
    "couldn't",
    "daren't",
    "didn't",
    "doesn't",
    "dont",
    "hadnt",
    "hasnt",
    "havent",
    "isnt",
    "mightnt",
    "mustnt",
    "neither",
    "don't",
    "hadn't",
    "hasn't",
    "haven't",
    "isn't",
    "mightn't",
    "mustn't",
    "neednt",
    "needn't",
    "never",
    "none",
    "nope",
    "nor",
    "not",
    "nothing",
    "nowhere",
    "oughtnt",
    "shant",
    "shouldnt",
    "uhuh",
    "wasnt",
    "werent",
    "oughtn't",
    "shan't",
    "shouldn't",
    "uh-uh",
    "wasn't",
    "weren't",
    "without",
    "wont",
    "wouldnt",
    "won't",
    "wouldn't",
    "rarely",
    "seldom",
    "despite",
];

pub const BOOSTERS: &[&str] = &[
    "absolutely",
    "amazingly",
    "awfully",
    "completely",
    "considerably",
    "decidedly",
    "deeply",
    "effing",
    "enormously",
    "entirely",
    "especially",
    "exceptionally",
    "extremely",
    "fabulously",
    "flipping",
    "flippin",
    "fricking",
    "frickin",
    "frigging",
    "friggin",
    "fully",
    "fucking",
    "greatly",
    "hella",
    "highly",
    "hugely",
    "incredibly",
    "intensely",
    "majorly",
    "more",
    "most",
    "particularly",
    "purely",
    "quite",
    "really",
    "remarkably",
    "so",
    "substantially",
    "thoroughly",
    "totally",
    "tremendously",
    "uber",
    "unbelievably",
    "unusually",
    "utterly",
    "very",
];

pub const DAMPENERS: &[&str] = &[
    "almost",
    "barely",
    "hardly",
    "just enough",
    "kind of",
    "kinda",
    "kindof",
    "kind-of",
    "less",
    "little",
    "marginally",
    "occasionally",
    "partly",
    "scarcely",
    "slightly",
    "somewhat",
    "sort of",
    "sorta",
    "sortof",
    "sort-of",
];

pub const IDIOMS: &[(&str, f64)] = &[
    ("the shit", 3.0),
    ("the bomb", 3.0),
    ("bad ass", 1.5),
    ("yeah right", -2.0),
    ("cut the mustard", 2.0),
    ("kiss of death", -1.5),
    ("hand to mouth", -2.0),
];
