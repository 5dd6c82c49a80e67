//! Seeded synthetic corpus generation with planted class signal.
//!
//! Documents are built from neutral filler vocabulary plus class-specific
//! keyword insertions (drawn from the loaded glossary's stance hints) and
//! class-specific clause openers (drawn from the subordinator lists). Every
//! sentence has a fixed token budget, so the average sentence length carries
//! no class or noise signal and separability comes only from the planted
//! features. Used by the test suites and the acceptance harness; also handy
//! for demo pipelines.

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Document, Genre, Language, Stance};
use crate::lexicon::{LexiconSet, ListKind, StanceHint};

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub n_docs: usize,
    pub languages: Vec<Language>,
    pub genre: Genre,
    /// Inclusive range of sentences per document.
    pub sentences_per_doc: (usize, usize),
    /// Fixed total token budget per sentence (including punctuation).
    pub tokens_per_sentence: usize,
    /// Probability that a sentence carries one class keyword.
    pub keyword_rate: f64,
    /// Probability that a sentence opens with a class-typed subordinate
    /// clause marker followed by a comma.
    pub clause_rate: f64,
    pub seed: u64,
    pub id_prefix: String,
    pub dates: Vec<NaiveDate>,
    /// Unused field kept for call-site symmetry with words-per-sentence
    /// style configs.
    pub words_per_sentence: (usize, usize),
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            n_docs: 100,
            languages: vec![Language::En],
            genre: Genre::Newspaper,
            sentences_per_doc: (20, 30),
            tokens_per_sentence: 12,
            keyword_rate: 0.8,
            clause_rate: 0.6,
            seed: 0,
            id_prefix: "doc".into(),
            dates: default_dates(),
            words_per_sentence: (0, 0),
        }
    }
}

fn default_dates() -> Vec<NaiveDate> {
    [
        (2022, 2, 23),
        (2022, 3, 1),
        (2022, 3, 8),
        (2022, 3, 18),
        (2022, 4, 4),
    ]
    .iter()
    .map(|(y, m, d)| NaiveDate::from_ymd_opt(*y, *m, *d).expect("valid date"))
    .collect()
}

fn filler(language: Language) -> &'static [&'static str] {
    match language {
        Language::En => &[
            "window", "street", "morning", "evening", "city", "town", "road", "bridge",
            "table", "river", "garden", "station", "market", "square",
        ],
        Language::Uk => &[
            "вікно", "вулиця", "ранок", "вечір", "місто", "дорога", "міст", "стіл",
            "річка", "сад", "станція", "ринок", "площа", "будинок",
        ],
        Language::Ru => &[
            "окно", "улица", "утро", "вечер", "город", "дорога", "мост", "стол", "река",
            "сад", "станция", "рынок", "площадь", "дом",
        ],
        Language::Ro => &[
            "fereastră", "stradă", "dimineață", "seară", "oraș", "drum", "pod", "masă",
            "râu", "grădină", "stație", "piață", "casă", "munte",
        ],
        Language::Fr => &[
            "fenêtre", "rue", "matin", "soir", "ville", "route", "pont", "table",
            "rivière", "jardin", "gare", "marché", "maison", "montagne",
        ],
    }
}

struct ClassMaterial {
    keywords: Vec<Vec<String>>,
    openers: Vec<Vec<String>>,
}

fn class_material(
    lexicons: &LexiconSet,
    language: Language,
    stance: Stance,
    per_class_keywords: usize,
) -> ClassMaterial {
    let hint = match stance {
        Stance::ProKremlin => StanceHint::KremlinMarker,
        Stance::ProWestern => StanceHint::WesternMarker,
    };
    let keywords: Vec<Vec<String>> = lexicons
        .glossary
        .iter()
        .filter(|e| e.stance_hint == hint)
        .filter_map(|e| e.forms.get(&language).and_then(|forms| forms.first()))
        .take(per_class_keywords)
        .cloned()
        .collect();
    let res = lexicons.language(language).expect("language loaded");
    let opener_lists = match stance {
        Stance::ProKremlin => [ListKind::SubordinatorsConcession, ListKind::SubordinatorsPurpose],
        Stance::ProWestern => [ListKind::SubordinatorsReason, ListKind::SubordinatorsCondition],
    };
    let openers: Vec<Vec<String>> = opener_lists
        .iter()
        .filter_map(|kind| res.function_words.get(*kind).first())
        .cloned()
        .collect();
    ClassMaterial { keywords, openers }
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// Generate a balanced labeled corpus with planted class signal.
pub fn generate(config: &SyntheticConfig, lexicons: &LexiconSet) -> Vec<Document> {
    assert!(
        config.tokens_per_sentence >= 10,
        "token budget too small for opener + keyword + filler"
    );
    let mut docs = Vec::with_capacity(config.n_docs);
    for i in 0..config.n_docs {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (i as u64).wrapping_mul(0x9E37_79B9));
        let stance = if i % 2 == 0 {
            Stance::ProWestern
        } else {
            Stance::ProKremlin
        };
        let language = config.languages[i % config.languages.len()];
        let material = class_material(lexicons, language, stance, 3);
        let words = filler(language);
        let (lo, hi) = config.sentences_per_doc;
        let n_sentences = rng.gen_range(lo..=hi.max(lo));
        let mut text = String::new();
        for s in 0..n_sentences {
            if s > 0 {
                text.push(' ');
            }
            let mut budget = config.tokens_per_sentence - 1; // terminal period
            let mut parts: Vec<String> = Vec::new();
            if !material.openers.is_empty() && rng.gen::<f64>() < config.clause_rate {
                let opener = material.openers.choose(&mut rng).expect("openers");
                budget -= opener.len() + 1; // phrase + comma
                parts.push(format!("{},", opener.join(" ")));
            }
            let keyword = if !material.keywords.is_empty() && rng.gen::<f64>() < config.keyword_rate
            {
                let kw = material.keywords.choose(&mut rng).expect("keywords");
                budget = budget.saturating_sub(kw.len());
                Some(kw.join(" "))
            } else {
                None
            };
            let mut fillers: Vec<String> = (0..budget)
                .map(|_| (*words.choose(&mut rng).expect("filler")).to_string())
                .collect();
            if let Some(kw) = keyword {
                let slot = rng.gen_range(0..=fillers.len());
                fillers.insert(slot, kw);
            }
            parts.extend(fillers);
            let sentence = parts.join(" ");
            text.push_str(&capitalize(&sentence));
            text.push('.');
        }
        let date = config.dates[i % config.dates.len()];
        docs.push(Document {
            id: format!("{}-{i:05}", config.id_prefix),
            text,
            language,
            genre: config.genre,
            source: match stance {
                Stance::ProWestern => "synthetic-west".into(),
                Stance::ProKremlin => "synthetic-east".into(),
            },
            stance: Some(stance),
            collected_on: date,
        });
    }
    docs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::Annotator;

    #[test]
    fn generated_corpus_is_balanced_and_deterministic() {
        let lexicons = crate::lexicon::builtin().unwrap().0;
        let config = SyntheticConfig {
            n_docs: 20,
            seed: 4,
            ..Default::default()
        };
        let a = generate(&config, &lexicons);
        let b = generate(&config, &lexicons);
        assert_eq!(a, b);
        let kremlin = a
            .iter()
            .filter(|d| d.stance == Some(Stance::ProKremlin))
            .count();
        assert_eq!(kremlin, 10);
        // All texts distinct (dedup must not shrink the corpus).
        let unique: std::collections::HashSet<&str> =
            a.iter().map(|d| d.text.as_str()).collect();
        assert_eq!(unique.len(), a.len());
    }

    #[test]
    fn every_sentence_hits_the_token_budget() {
        let lexicons = crate::lexicon::builtin().unwrap().0;
        let config = SyntheticConfig {
            n_docs: 6,
            languages: vec![Language::En, Language::Uk, Language::Ru],
            seed: 2,
            sentences_per_doc: (3, 5),
            ..Default::default()
        };
        let docs = generate(&config, &lexicons);
        let annotator = Annotator::new(&lexicons).unwrap();
        for doc in &docs {
            let annotated = annotator.annotate_document(doc).unwrap();
            for sentence in &annotated.sentences {
                assert_eq!(
                    sentence.len(),
                    config.tokens_per_sentence,
                    "doc {} sentence {:?}",
                    doc.id,
                    sentence.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>()
                );
            }
        }
    }
}
