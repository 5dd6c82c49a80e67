//! Built-in per-language tagging data: irregular lemma maps, suffix rewrite
//! rules, POS suffix rules, participle lists, and degree markers.
//!
//! These tables are heuristics, not grammars. Lemma rewrites are mostly
//! dictionary-checked (a rewrite only wins when it lands on a known lemma),
//! so generous rule lists are safe; POS rules carry exception lists for the
//! frequent false matches.

use super::{MorphFlag, Pos};
use crate::corpus::Language;

pub(super) struct LemmaRule {
    pub suffix: &'static str,
    pub replacement: &'static str,
    pub min_stem: usize,
    /// Characters the stem must not end with for the rule to apply.
    pub not_after: &'static str,
}

const fn lr(suffix: &'static str, replacement: &'static str, min_stem: usize) -> LemmaRule {
    LemmaRule {
        suffix,
        replacement,
        min_stem,
        not_after: "",
    }
}

const fn lrn(
    suffix: &'static str,
    replacement: &'static str,
    min_stem: usize,
    not_after: &'static str,
) -> LemmaRule {
    LemmaRule {
        suffix,
        replacement,
        min_stem,
        not_after,
    }
}

pub(super) struct PosRule {
    pub suffix: &'static str,
    pub min_len: usize,
    pub pos: Pos,
    pub flag: Option<MorphFlag>,
}

const fn pr(suffix: &'static str, min_len: usize, pos: Pos) -> PosRule {
    PosRule {
        suffix,
        min_len,
        pos,
        flag: None,
    }
}

const fn prf(suffix: &'static str, min_len: usize, pos: Pos, flag: MorphFlag) -> PosRule {
    PosRule {
        suffix,
        min_len,
        pos,
        flag: Some(flag),
    }
}

pub struct LanguageProfile {
    pub language: Language,
    pub(super) irregulars: &'static [(&'static str, &'static str)],
    pub(super) protected: &'static [&'static str],
    pub(super) lemma_rules: &'static [LemmaRule],
    pub(super) default_lemma_rules: &'static [LemmaRule],
    pub(super) pos_rules: &'static [PosRule],
    pub(super) pos_rule_exceptions: &'static [&'static str],
    pub(super) participles: &'static [&'static str],
    pub(super) degree_markers: &'static [(&'static str, MorphFlag)],
    pub(super) superlative_upgraders: &'static [&'static str],
    pub(super) superlative_prefixes: &'static [&'static str],
}

pub fn language_profile(language: Language) -> &'static LanguageProfile {
    match language {
        Language::En => &EN,
        Language::Uk => &UK,
        Language::Ru => &RU,
        Language::Ro => &RO,
        Language::Fr => &FR,
    }
}

// ---------------------------------------------------------------- English

static EN: LanguageProfile = LanguageProfile {
    language: Language::En,
    irregulars: &[
        ("am", "be"),
        ("are", "be"),
        ("ate", "eat"),
        ("been", "be"),
        ("began", "begin"),
        ("begun", "begin"),
        ("being", "be"),
        ("bought", "buy"),
        ("broke", "break"),
        ("broken", "break"),
        ("brought", "bring"),
        ("built", "build"),
        ("came", "come"),
        ("caught", "catch"),
        ("children", "child"),
        ("chose", "choose"),
        ("chosen", "choose"),
        ("did", "do"),
        ("does", "do"),
        ("done", "do"),
        ("drove", "drive"),
        ("driven", "drive"),
        ("eaten", "eat"),
        ("fallen", "fall"),
        ("fell", "fall"),
        ("felt", "feel"),
        ("flew", "fly"),
        ("flown", "fly"),
        ("forgot", "forget"),
        ("forgotten", "forget"),
        ("fought", "fight"),
        ("found", "find"),
        ("gave", "give"),
        ("given", "give"),
        ("goes", "go"),
        ("gone", "go"),
        ("got", "get"),
        ("gotten", "get"),
        ("grew", "grow"),
        ("grown", "grow"),
        ("had", "have"),
        ("has", "have"),
        ("heard", "hear"),
        ("held", "hold"),
        ("hid", "hide"),
        ("hidden", "hide"),
        ("is", "be"),
        ("kept", "keep"),
        ("knew", "know"),
        ("known", "know"),
        ("led", "lead"),
        ("left", "leave"),
        ("lost", "lose"),
        ("made", "make"),
        ("meant", "mean"),
        ("men", "man"),
        ("met", "meet"),
        ("paid", "pay"),
        ("ran", "run"),
        ("risen", "rise"),
        ("rose", "rise"),
        ("said", "say"),
        ("sang", "sing"),
        ("sank", "sink"),
        ("sat", "sit"),
        ("saw", "see"),
        ("says", "say"),
        ("seen", "see"),
        ("sent", "send"),
        ("shot", "shoot"),
        ("showed", "show"),
        ("shown", "show"),
        ("slept", "sleep"),
        ("sold", "sell"),
        ("spoke", "speak"),
        ("spoken", "speak"),
        ("stood", "stand"),
        ("struck", "strike"),
        ("sung", "sing"),
        ("sunk", "sink"),
        ("swore", "swear"),
        ("sworn", "swear"),
        ("taken", "take"),
        ("thought", "think"),
        ("threw", "throw"),
        ("thrown", "throw"),
        ("told", "tell"),
        ("took", "take"),
        ("understood", "understand"),
        ("was", "be"),
        ("went", "go"),
        ("were", "be"),
        ("woke", "wake"),
        ("woken", "wake"),
        ("women", "woman"),
        ("won", "win"),
        ("wore", "wear"),
        ("worn", "wear"),
        ("wrote", "write"),
        ("written", "write"),
    ],
    protected: &[
        "news", "series", "species", "crisis", "analysis", "basis", "its", "his", "hers",
        "ours", "yours", "theirs", "this", "thus", "as", "us", "yes", "less", "unless",
        "perhaps", "always", "during", "against", "across", "besides", "forces",
    ],
    lemma_rules: &[
        lr("ies", "y", 2),
        lr("ves", "f", 2),
        lr("sses", "ss", 2),
        lr("ches", "ch", 2),
        lr("shes", "sh", 2),
        lr("xes", "x", 2),
        lr("ed", "", 2),
        lr("ed", "e", 2),
        lr("ing", "", 3),
        lr("ing", "e", 3),
        lr("er", "", 3),
        lr("est", "", 3),
        lr("ly", "", 3),
        lr("s", "", 3),
    ],
    default_lemma_rules: &[
        lr("ies", "y", 3),
        lr("eed", "ee", 2),
        lr("ed", "", 4),
        lr("ing", "", 4),
        lrn("s", "", 3, "sui"),
    ],
    pos_rules: &[
        pr("n't", 4, Pos::AUX),
        pr("ly", 4, Pos::ADV),
        prf("est", 5, Pos::ADJ, MorphFlag::Superlative),
        prf("er", 5, Pos::ADJ, MorphFlag::Comparative),
        prf("ed", 4, Pos::VERB, MorphFlag::PastParticiple),
        pr("ing", 5, Pos::VERB),
        pr("tion", 5, Pos::NOUN),
        pr("sion", 5, Pos::NOUN),
        pr("ment", 5, Pos::NOUN),
        pr("ness", 5, Pos::NOUN),
        pr("ity", 5, Pos::NOUN),
        pr("ance", 5, Pos::NOUN),
        pr("ence", 5, Pos::NOUN),
        pr("ous", 4, Pos::ADJ),
        pr("ful", 4, Pos::ADJ),
        pr("ive", 4, Pos::ADJ),
        pr("ize", 4, Pos::VERB),
        pr("ise", 4, Pos::VERB),
    ],
    pos_rule_exceptions: &[
        "never", "ever", "other", "under", "over", "after", "paper", "member", "number",
        "minister", "soldier", "officer", "order", "border", "power", "water", "mother",
        "father", "brother", "sister", "winter", "summer", "letter", "matter", "center",
        "leader", "computer", "weather", "together", "whether", "rather", "either",
        "river", "silver", "chapter", "quarter", "corner", "danger", "anger", "consider",
        "remember", "deliver", "offer", "suffer", "interest", "forest", "arrest",
        "protest", "request", "harvest", "honest", "modest", "need", "indeed", "speed",
        "seed", "deed", "hatred", "sacred", "hundred", "naked", "prime",
    ],
    participles: &[
        "beaten", "become", "bent", "bet", "bound", "bitten", "blown", "burnt", "come",
        "cost", "cut", "dealt", "drawn", "dreamt", "drunk", "fed", "forbidden",
        "forgiven", "frozen", "hit", "hurt", "laid", "lain", "lent", "let", "lit",
        "proven", "put", "quit", "read", "ridden", "set", "shaken", "shone", "shut",
        "slain", "spent", "spread", "spun", "stolen", "swept", "swum", "taught", "torn",
        "undergone", "withdrawn", "woven",
        // high-frequency irregular participles that double as past forms
        "been", "born", "borne", "begun", "broken", "brought", "built", "bought",
        "caught", "chosen", "done", "driven", "eaten", "fallen", "felt", "flown",
        "forgotten", "fought", "found", "given", "gone", "grown", "heard", "held",
        "hidden", "kept", "known", "led", "left", "lost", "made", "meant", "met",
        "paid", "risen", "said", "seen", "sent", "shot", "shown", "slept", "sold",
        "spoken", "stood", "struck", "sung", "sunk", "sworn", "taken", "thought",
        "thrown", "told", "understood", "woken", "won", "worn", "written",
    ],
    degree_markers: &[
        ("least", MorphFlag::Superlative),
        ("less", MorphFlag::Comparative),
        ("more", MorphFlag::Comparative),
        ("most", MorphFlag::Superlative),
    ],
    superlative_upgraders: &[],
    superlative_prefixes: &[],
};

// ---------------------------------------------------------------- Ukrainian

static UK: LanguageProfile = LanguageProfile {
    language: Language::Uk,
    irregulars: &[
        ("був", "бути"),
        ("була", "бути"),
        ("було", "бути"),
        ("були", "бути"),
        ("буде", "бути"),
        ("будуть", "бути"),
        ("будемо", "бути"),
        ("є", "бути"),
        ("міг", "могти"),
        ("могла", "могти"),
        ("могли", "могти"),
        ("може", "могти"),
        ("можуть", "могти"),
        ("хоче", "хотіти"),
        ("хочуть", "хотіти"),
        ("хотів", "хотіти"),
        ("хотіла", "хотіти"),
        ("йде", "йти"),
        ("йдуть", "йти"),
        ("ішов", "йти"),
        ("йшов", "йти"),
        ("люди", "людина"),
        ("людей", "людина"),
        ("діти", "дитина"),
        ("дітей", "дитина"),
    ],
    protected: &["разом", "тому", "далі", "дуже", "вже", "ще", "там", "тут", "зараз"],
    lemma_rules: &[
        lr("ії", "ія", 2),
        lr("ій", "ія", 2),
        lr("ію", "ія", 2),
        lr("ією", "ія", 2),
        lr("ться", "тися", 2),
        lr("ються", "тися", 2),
        lr("ється", "тися", 2),
        lr("ала", "ати", 2),
        lr("али", "ати", 2),
        lr("ало", "ати", 2),
        lr("ила", "ити", 2),
        lr("или", "ити", 2),
        lr("ило", "ити", 2),
        lr("іла", "іти", 2),
        lr("іли", "іти", 2),
        lr("ла", "ти", 2),
        lr("ли", "ти", 2),
        lr("ло", "ти", 2),
        lr("ють", "ти", 2),
        lr("ать", "ати", 2),
        lr("ить", "ити", 2),
        lr("в", "ти", 3),
        lr("є", "ти", 3),
        lr("ами", "а", 2),
        lr("ам", "а", 2),
        lr("ах", "а", 2),
        lr("ою", "а", 2),
        lr("ями", "я", 2),
        lr("ям", "я", 2),
        lr("ях", "я", 2),
        lr("ові", "", 3),
        lr("ів", "", 3),
        lr("и", "а", 2),
        lr("і", "а", 2),
        lr("у", "а", 2),
        lr("е", "а", 2),
        lr("ю", "я", 2),
        lr("ого", "ий", 2),
        lr("ому", "ий", 2),
        lr("им", "ий", 2),
        lr("ими", "ий", 2),
        lr("их", "ий", 2),
        lr("ої", "ий", 2),
        lr("ій", "ий", 2),
        lr("а", "", 3),
        lr("у", "", 3),
        lr("и", "", 3),
        lr("і", "", 3),
        lr("е", "", 3),
        lr("ом", "", 3),
    ],
    default_lemma_rules: &[],
    pos_rules: &[
        prf("ований", 7, Pos::VERB, MorphFlag::PastParticiple),
        prf("ована", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("оване", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("овані", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("ованих", 7, Pos::VERB, MorphFlag::PastParticiple),
        prf("ованого", 8, Pos::VERB, MorphFlag::PastParticiple),
        prf("єний", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("єна", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("єно", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ений", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("ена", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("ено", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("ені", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("аний", 6, Pos::VERB, MorphFlag::PastParticiple),
        prf("ано", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("итий", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("утий", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ятий", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("іший", 5, Pos::ADJ, MorphFlag::Comparative),
        prf("іше", 5, Pos::ADV, MorphFlag::Comparative),
        pr("ться", 5, Pos::VERB),
        pr("тися", 5, Pos::VERB),
        pr("ає", 4, Pos::VERB),
        pr("ають", 5, Pos::VERB),
        pr("ує", 4, Pos::VERB),
        pr("ують", 5, Pos::VERB),
        pr("ити", 5, Pos::VERB),
        pr("ати", 5, Pos::VERB),
        pr("яти", 5, Pos::VERB),
        pr("ути", 5, Pos::VERB),
        pr("іти", 5, Pos::VERB),
        pr("ила", 5, Pos::VERB),
        pr("или", 5, Pos::VERB),
        pr("ала", 5, Pos::VERB),
        pr("али", 5, Pos::VERB),
        pr("ив", 5, Pos::VERB),
        pr("ого", 5, Pos::ADJ),
        pr("ому", 5, Pos::ADJ),
        pr("ими", 5, Pos::ADJ),
        pr("ній", 5, Pos::ADJ),
        pr("ий", 4, Pos::ADJ),
        pr("их", 5, Pos::ADJ),
        pr("ськи", 5, Pos::ADV),
    ],
    pos_rule_exceptions: &[
        "актив", "мотив", "архів", "колектив", "позитив", "негатив", "наратив",
        "зелений", "світи", "геній",
    ],
    participles: &["взятий", "вбитий", "забутий", "розбитий", "здобутий"],
    degree_markers: &[
        ("більш", MorphFlag::Comparative),
        ("менш", MorphFlag::Comparative),
        ("найбільш", MorphFlag::Superlative),
        ("найменш", MorphFlag::Superlative),
    ],
    superlative_upgraders: &[],
    superlative_prefixes: &["най"],
};

// ---------------------------------------------------------------- Russian

static RU: LanguageProfile = LanguageProfile {
    language: Language::Ru,
    irregulars: &[
        ("был", "быть"),
        ("была", "быть"),
        ("было", "быть"),
        ("были", "быть"),
        ("будет", "быть"),
        ("будут", "быть"),
        ("будем", "быть"),
        ("есть", "быть"),
        ("мог", "мочь"),
        ("могла", "мочь"),
        ("могли", "мочь"),
        ("может", "мочь"),
        ("могут", "мочь"),
        ("хочет", "хотеть"),
        ("хотят", "хотеть"),
        ("хотел", "хотеть"),
        ("хотела", "хотеть"),
        ("идет", "идти"),
        ("идёт", "идти"),
        ("идут", "идти"),
        ("шел", "идти"),
        ("шёл", "идти"),
        ("шла", "идти"),
        ("люди", "человек"),
        ("людей", "человек"),
        ("дети", "ребенок"),
        ("детей", "ребенок"),
    ],
    protected: &["очень", "уже", "еще", "ещё", "там", "тут", "сейчас", "вместе", "потом"],
    lemma_rules: &[
        lr("ии", "ия", 2),
        lr("ий", "ия", 2),
        lr("ию", "ия", 2),
        lr("ией", "ия", 2),
        lr("ается", "аться", 2),
        lr("ются", "ться", 2),
        lr("ется", "ться", 2),
        lr("ится", "иться", 2),
        lr("ился", "иться", 2),
        lr("ала", "ать", 2),
        lr("али", "ать", 2),
        lr("ало", "ать", 2),
        lr("ила", "ить", 2),
        lr("или", "ить", 2),
        lr("ило", "ить", 2),
        lr("ела", "еть", 2),
        lr("ели", "еть", 2),
        lr("ла", "ть", 2),
        lr("ли", "ть", 2),
        lr("ло", "ть", 2),
        lr("л", "ть", 3),
        lr("ет", "ть", 2),
        lr("ют", "ть", 2),
        lr("ит", "ить", 2),
        lr("ят", "ить", 2),
        lr("ами", "а", 2),
        lr("ам", "а", 2),
        lr("ах", "а", 2),
        lr("ой", "а", 2),
        lr("ою", "а", 2),
        lr("ями", "я", 2),
        lr("ям", "я", 2),
        lr("ях", "я", 2),
        lr("ьи", "ья", 2),
        lr("ы", "а", 2),
        lr("е", "а", 2),
        lr("у", "а", 2),
        lr("и", "а", 2),
        lr("ю", "я", 2),
        lr("ей", "я", 2),
        lr("ого", "ый", 2),
        lr("ому", "ый", 2),
        lr("ым", "ый", 2),
        lr("ыми", "ый", 2),
        lr("ых", "ый", 2),
        lr("ая", "ый", 2),
        lr("ую", "ый", 2),
        lr("ое", "ый", 2),
        lr("ые", "ый", 2),
        lr("его", "ий", 2),
        lr("ему", "ий", 2),
        lr("им", "ий", 2),
        lr("ими", "ий", 2),
        lr("их", "ий", 2),
        lr("ие", "ий", 2),
        lr("яя", "ий", 2),
        lr("ее", "ий", 2),
        lr("а", "", 3),
        lr("у", "", 3),
        lr("ы", "", 3),
        lr("и", "", 3),
        lr("е", "", 3),
        lr("ом", "", 3),
        lr("ов", "", 3),
    ],
    default_lemma_rules: &[],
    pos_rules: &[
        prf("нный", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нная", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нное", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нные", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нных", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нным", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нной", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("нную", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("тый", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("тая", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("тое", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("тые", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("тых", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("ён", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ен", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ена", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ено", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ены", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ейший", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("ейшая", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("ейшее", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("ейшие", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("айший", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("айшая", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("айшее", 6, Pos::ADJ, MorphFlag::Superlative),
        prf("айшие", 6, Pos::ADJ, MorphFlag::Superlative),
        pr("ться", 5, Pos::VERB),
        pr("тся", 5, Pos::VERB),
        pr("ться", 5, Pos::VERB),
        pr("ает", 5, Pos::VERB),
        pr("яет", 5, Pos::VERB),
        pr("ует", 5, Pos::VERB),
        pr("еет", 5, Pos::VERB),
        pr("ают", 5, Pos::VERB),
        pr("яют", 5, Pos::VERB),
        pr("уют", 5, Pos::VERB),
        pr("ать", 5, Pos::VERB),
        pr("ять", 5, Pos::VERB),
        pr("ить", 5, Pos::VERB),
        pr("еть", 5, Pos::VERB),
        pr("уть", 5, Pos::VERB),
        pr("ала", 5, Pos::VERB),
        pr("али", 5, Pos::VERB),
        pr("ила", 5, Pos::VERB),
        pr("или", 5, Pos::VERB),
        pr("ал", 5, Pos::VERB),
        pr("ил", 5, Pos::VERB),
        pr("ого", 5, Pos::ADJ),
        pr("ому", 5, Pos::ADJ),
        pr("ыми", 5, Pos::ADJ),
        pr("ый", 4, Pos::ADJ),
        pr("ая", 4, Pos::ADJ),
        pr("ое", 4, Pos::ADJ),
        pr("ые", 4, Pos::ADJ),
        pr("ых", 5, Pos::ADJ),
        pr("ой", 5, Pos::ADJ),
        pr("ий", 5, Pos::ADJ),
        pr("их", 5, Pos::ADJ),
        pr("ски", 5, Pos::ADV),
    ],
    pos_rule_exceptions: &[
        "совет", "бюджет", "кабинет", "комитет", "университет", "билет", "секрет",
        "сюжет", "букет", "пакет", "канал", "журнал", "вокзал", "генерал", "арсенал",
        "квартал", "капитал", "портал", "герой", "покой", "конвой", "гений",
        "сценарий", "комментарий", "критерий", "военный",
    ],
    participles: &["взят", "взята", "взято", "взяты", "убит", "убита", "убито", "убиты"],
    degree_markers: &[
        ("более", MorphFlag::Comparative),
        ("менее", MorphFlag::Comparative),
        ("самый", MorphFlag::Superlative),
        ("самая", MorphFlag::Superlative),
        ("самое", MorphFlag::Superlative),
        ("самые", MorphFlag::Superlative),
        ("наиболее", MorphFlag::Superlative),
        ("наименее", MorphFlag::Superlative),
    ],
    superlative_upgraders: &[],
    superlative_prefixes: &["наи"],
};

// ---------------------------------------------------------------- Romanian

static RO: LanguageProfile = LanguageProfile {
    language: Language::Ro,
    irregulars: &[
        ("este", "fi"),
        ("e", "fi"),
        ("sunt", "fi"),
        ("era", "fi"),
        ("erau", "fi"),
        ("fost", "fi"),
        ("fie", "fi"),
        ("fiind", "fi"),
        ("va", "vrea"),
        ("vor", "vrea"),
        ("au", "avea"),
        ("are", "avea"),
        ("avut", "avea"),
        ("poate", "putea"),
        ("pot", "putea"),
        ("putut", "putea"),
        ("trebuie", "trebui"),
        ("trebuia", "trebui"),
        ("oameni", "om"),
        ("oamenilor", "om"),
        ("copii", "copil"),
        ("copiii", "copil"),
        ("copiilor", "copil"),
    ],
    protected: &["ani", "zile", "față", "foarte", "acum", "aici", "acolo", "apoi"],
    lemma_rules: &[
        lr("ției", "ție", 2),
        lr("țiile", "ții", 2),
        lr("țiilor", "ții", 2),
        lr("ului", "", 3),
        lr("ul", "", 3),
        lr("lor", "", 3),
        lr("ilor", "", 3),
        lr("elor", "ă", 2),
        lr("ele", "ă", 2),
        lr("ea", "ă", 2),
        lr("a", "ă", 2),
        lr("ă", "", 3),
        lr("ată", "at", 2),
        lr("ate", "at", 2),
        lr("ați", "at", 2),
        lr("ită", "it", 2),
        lr("ite", "it", 2),
        lr("ută", "ut", 2),
        lr("ute", "ut", 2),
        lr("uri", "", 3),
        lr("urile", "", 3),
        lr("i", "", 3),
        lr("e", "ă", 2),
        lr("e", "", 3),
        lr("ează", "a", 2),
        lr("ește", "i", 2),
    ],
    default_lemma_rules: &[],
    pos_rules: &[
        pr("itate", 6, Pos::NOUN),
        pr("tate", 5, Pos::NOUN),
        pr("ția", 4, Pos::NOUN),
        pr("ție", 4, Pos::NOUN),
        pr("ții", 4, Pos::NOUN),
        pr("țiile", 6, Pos::NOUN),
        pr("ează", 6, Pos::VERB),
        pr("ește", 6, Pos::VERB),
        pr("esc", 5, Pos::VERB),
        prf("ată", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ate", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ați", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ită", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ite", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ută", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("ute", 5, Pos::VERB, MorphFlag::PastParticiple),
        prf("at", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("ut", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("it", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("us", 4, Pos::VERB, MorphFlag::PastParticiple),
        pr("oasă", 5, Pos::ADJ),
        pr("os", 4, Pos::ADJ),
        pr("ică", 4, Pos::ADJ),
        pr("ice", 4, Pos::ADJ),
        pr("ivă", 5, Pos::ADJ),
        pr("iv", 4, Pos::ADJ),
    ],
    pos_rule_exceptions: &[
        "stat", "senat", "mandat", "atentat", "aparat", "candidat", "rezultat", "format",
        "climat", "minut", "institut", "atribut", "statut", "spirit", "credit", "profit",
        "deficit", "merit", "granit", "autobus", "campus", "virus", "bonus", "minus",
        "corpus",
    ],
    participles: &["distrus", "spus", "adus", "pus", "prins", "scris", "ucis"],
    degree_markers: &[("mai", MorphFlag::Comparative)],
    superlative_upgraders: &["cel", "cea", "cei", "cele"],
    superlative_prefixes: &[],
};

// ---------------------------------------------------------------- French

static FR: LanguageProfile = LanguageProfile {
    language: Language::Fr,
    irregulars: &[
        ("est", "être"),
        ("sont", "être"),
        ("était", "être"),
        ("étaient", "être"),
        ("été", "être"),
        ("sera", "être"),
        ("seront", "être"),
        ("serait", "être"),
        ("suis", "être"),
        ("sommes", "être"),
        ("êtes", "être"),
        ("fut", "être"),
        ("soit", "être"),
        ("étant", "être"),
        ("a", "avoir"),
        ("ont", "avoir"),
        ("avait", "avoir"),
        ("avaient", "avoir"),
        ("eu", "avoir"),
        ("aura", "avoir"),
        ("ai", "avoir"),
        ("avons", "avoir"),
        ("avez", "avoir"),
        ("peut", "pouvoir"),
        ("peuvent", "pouvoir"),
        ("pouvait", "pouvoir"),
        ("pourra", "pouvoir"),
        ("pourrait", "pouvoir"),
        ("pu", "pouvoir"),
        ("doit", "devoir"),
        ("doivent", "devoir"),
        ("devait", "devoir"),
        ("devra", "devoir"),
        ("dû", "devoir"),
        ("faut", "falloir"),
        ("fallait", "falloir"),
        ("faudra", "falloir"),
        ("fait", "faire"),
        ("font", "faire"),
        ("faisait", "faire"),
        ("fera", "faire"),
        ("va", "aller"),
        ("vont", "aller"),
        ("allait", "aller"),
        ("ira", "aller"),
        ("dit", "dire"),
        ("disent", "dire"),
        ("disait", "dire"),
        ("dira", "dire"),
        ("gens", "gens"),
        ("l'", "le"),
        ("d'", "de"),
        ("n'", "ne"),
        ("j'", "je"),
        ("s'", "se"),
        ("c'", "ce"),
        ("m'", "me"),
        ("t'", "te"),
        ("qu'", "que"),
        ("jusqu'", "jusque"),
        ("lorsqu'", "lorsque"),
        ("puisqu'", "puisque"),
        ("l’", "le"),
        ("d’", "de"),
        ("n’", "ne"),
        ("j’", "je"),
        ("s’", "se"),
        ("c’", "ce"),
        ("m’", "me"),
        ("t’", "te"),
        ("qu’", "que"),
    ],
    protected: &[
        "pays", "fois", "mois", "toujours", "plusieurs", "temps", "corps", "cours",
        "sens", "succès", "progrès", "procès", "après", "très", "près", "français",
    ],
    lemma_rules: &[
        lr("aux", "al", 2),
        lr("eaux", "eau", 2),
        lr("ées", "é", 1),
        lr("ée", "é", 1),
        lr("és", "é", 1),
        lr("euse", "eux", 2),
        lr("ienne", "ien", 2),
        lr("es", "", 3),
        lr("es", "e", 2),
        lr("e", "", 3),
        lr("s", "", 3),
        lr("ent", "er", 3),
        lr("ait", "er", 3),
        lr("aient", "er", 3),
        lr("era", "er", 3),
    ],
    default_lemma_rules: &[lrn("s", "", 4, "su")],
    pos_rules: &[
        pr("tion", 5, Pos::NOUN),
        pr("sion", 5, Pos::NOUN),
        pr("ance", 5, Pos::NOUN),
        pr("ence", 5, Pos::NOUN),
        pr("té", 4, Pos::NOUN),
        pr("tés", 5, Pos::NOUN),
        pr("ment", 6, Pos::ADV),
        prf("ées", 4, Pos::VERB, MorphFlag::PastParticiple),
        prf("ée", 3, Pos::VERB, MorphFlag::PastParticiple),
        prf("és", 3, Pos::VERB, MorphFlag::PastParticiple),
        prf("é", 3, Pos::VERB, MorphFlag::PastParticiple),
        pr("aient", 6, Pos::VERB),
        pr("ait", 5, Pos::VERB),
        pr("era", 5, Pos::VERB),
        pr("erait", 6, Pos::VERB),
        pr("ique", 5, Pos::ADJ),
        pr("euse", 5, Pos::ADJ),
        pr("eux", 4, Pos::ADJ),
        pr("ive", 4, Pos::ADJ),
        pr("ifs", 4, Pos::ADJ),
        pr("if", 4, Pos::ADJ),
        pr("eur", 4, Pos::NOUN),
    ],
    pos_rule_exceptions: &[
        "gouvernement", "parlement", "département", "moment", "mouvement", "armement",
        "document", "monument", "argument", "événement", "évènement", "jugement",
        "logement", "paiement", "règlement", "testament", "environnement", "élément",
        "yeux", "jeux", "lieux", "dieux", "cieux", "enjeux", "milieux", "meilleur",
        "majeur", "mineur", "supérieur", "inférieur", "extérieur", "intérieur",
        "année", "armée", "journée", "idée", "musée", "lycée", "matinée", "soirée",
        "comité", "côté", "traité",
    ],
    participles: &[
        "mis", "pris", "appris", "compris", "détruit", "construit", "écrit", "mort",
        "né", "ouvert", "offert", "couvert", "découvert", "vu", "su", "reçu", "perdu",
        "rendu", "répondu", "vendu", "entendu", "attendu", "défendu", "vécu", "lu",
        "cru", "bu", "connu", "reconnu", "paru", "apparu", "disparu", "couru", "voulu",
        "venu", "tenu", "devenu", "obtenu", "suivi", "servi", "senti", "parti", "sorti",
        "fini", "choisi", "réussi", "saisi", "envahi", "établi", "accompli", "rempli",
        "eu", "été", "fait", "dit", "pu", "dû",
    ],
    degree_markers: &[
        ("plus", MorphFlag::Comparative),
        ("moins", MorphFlag::Comparative),
        ("meilleur", MorphFlag::Comparative),
        ("pire", MorphFlag::Comparative),
    ],
    superlative_upgraders: &["le", "la", "les"],
    superlative_prefixes: &[],
};
