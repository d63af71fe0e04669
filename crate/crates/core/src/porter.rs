//! The Porter (1980) suffix-stripping stemmer.
//!
//! This follows the original published rule set (`abli -> able` in step 2,
//! no `logi` rule), with the usual reference-implementation guard that words
//! of one or two letters are returned untouched. Input is expected to be
//! lowercase ASCII; anything containing a non-letter is passed through.

/// One rule group of the algorithm, exposed so each group can be exercised
/// in isolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Step1a,
    Step1b,
    Step1c,
    Step2,
    Step3,
    Step4,
    Step5a,
    Step5b,
}

impl Step {
    pub const ALL: [Step; 8] = [
        Step::Step1a,
        Step::Step1b,
        Step::Step1c,
        Step::Step2,
        Step::Step3,
        Step::Step4,
        Step::Step5a,
        Step::Step5b,
    ];
}

/// Stem a single lowercase token.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word(word.as_bytes().to_vec());
    for step in Step::ALL {
        w.apply(step);
    }
    w.into_string()
}

/// Apply only `step` to `word`. No length guard is applied here.
pub fn apply_step(step: Step, word: &str) -> String {
    if !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word(word.as_bytes().to_vec());
    w.apply(step);
    w.into_string()
}

struct Word(Vec<u8>);

impl Word {
    fn into_string(self) -> String {
        // only ASCII letters ever enter or leave the buffer
        String::from_utf8(self.0).expect("ascii")
    }

    fn apply(&mut self, step: Step) {
        match step {
            Step::Step1a => self.step1a(),
            Step::Step1b => self.step1b(),
            Step::Step1c => self.step1c(),
            Step::Step2 => self.step2(),
            Step::Step3 => self.step3(),
            Step::Step4 => self.step4(),
            Step::Step5a => self.step5a(),
            Step::Step5b => self.step5b(),
        }
    }

    fn is_consonant(&self, i: usize) -> bool {
        match self.0[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// The measure m of `self.0[..len]`, counting VC sequences in [C](VC)^m[V].
    fn measure(&self, len: usize) -> usize {
        let mut m = 0;
        let mut i = 0;
        while i < len && self.is_consonant(i) {
            i += 1;
        }
        loop {
            while i < len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= len {
                return m;
            }
            while i < len && self.is_consonant(i) {
                i += 1;
            }
            m += 1;
            if i >= len {
                return m;
            }
        }
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    fn ends_double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.0[len - 1] == self.0[len - 2] && self.is_consonant(len - 1)
    }

    /// *o: the prefix ends consonant-vowel-consonant and the final consonant
    /// is not w, x or y.
    fn ends_cvc(&self, len: usize) -> bool {
        if len < 3 {
            return false;
        }
        if !self.is_consonant(len - 1) || self.is_consonant(len - 2) || !self.is_consonant(len - 3)
        {
            return false;
        }
        !matches!(self.0[len - 1], b'w' | b'x' | b'y')
    }

    fn ends_with(&self, suffix: &str) -> bool {
        self.0.ends_with(suffix.as_bytes())
    }

    fn stem_len(&self, suffix: &str) -> usize {
        self.0.len() - suffix.len()
    }

    fn replace_suffix(&mut self, suffix: &str, replacement: &str) {
        let keep = self.stem_len(suffix);
        self.0.truncate(keep);
        self.0.extend_from_slice(replacement.as_bytes());
    }

    /// Find the longest suffix in `rules` that the word ends with and, if the
    /// remaining stem has measure > `min_measure`, swap it for its replacement.
    /// Only the longest match is considered.
    fn replace_longest(&mut self, rules: &[(&str, &str)], min_measure: usize) {
        let hit = rules
            .iter()
            .filter(|(suffix, _)| self.ends_with(suffix))
            .max_by_key(|(suffix, _)| suffix.len());
        if let Some(&(suffix, replacement)) = hit {
            if self.measure(self.stem_len(suffix)) > min_measure {
                self.replace_suffix(suffix, replacement);
            }
        }
    }

    fn step1a(&mut self) {
        if self.ends_with("sses") {
            self.replace_suffix("sses", "ss");
        } else if self.ends_with("ies") {
            self.replace_suffix("ies", "i");
        } else if self.ends_with("s") && !self.ends_with("ss") {
            self.replace_suffix("s", "");
        }
    }

    fn step1b(&mut self) {
        if self.ends_with("eed") {
            if self.measure(self.stem_len("eed")) > 0 {
                self.replace_suffix("eed", "ee");
            }
            return;
        }
        let removed = ["ed", "ing"]
            .into_iter()
            .find(|suffix| self.ends_with(suffix) && self.has_vowel(self.stem_len(suffix)));
        let Some(suffix) = removed else {
            return;
        };
        self.replace_suffix(suffix, "");
        let len = self.0.len();
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.0.push(b'e');
        } else if self.ends_double_consonant(len) && !matches!(self.0[len - 1], b'l' | b's' | b'z')
        {
            self.0.pop();
        } else if self.measure(len) == 1 && self.ends_cvc(len) {
            self.0.push(b'e');
        }
    }

    fn step1c(&mut self) {
        if self.ends_with("y") && self.has_vowel(self.stem_len("y")) {
            self.replace_suffix("y", "i");
        }
    }

    fn step2(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("ational", "ate"),
            ("tional", "tion"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("abli", "able"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
            ("ization", "ize"),
            ("ation", "ate"),
            ("ator", "ate"),
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("biliti", "ble"),
        ];
        self.replace_longest(RULES, 0);
    }

    fn step3(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("ful", ""),
            ("ness", ""),
        ];
        self.replace_longest(RULES, 0);
    }

    fn step4(&mut self) {
        const SUFFIXES: &[&str] = &[
            "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ion",
            "ou", "ism", "ate", "iti", "ous", "ive", "ize",
        ];
        let Some(suffix) = SUFFIXES
            .iter()
            .filter(|s| self.ends_with(s))
            .max_by_key(|s| s.len())
        else {
            return;
        };
        let stem = self.stem_len(suffix);
        if *suffix == "ion" && !(stem > 0 && matches!(self.0[stem - 1], b's' | b't')) {
            return;
        }
        if self.measure(stem) > 1 {
            self.0.truncate(stem);
        }
    }

    fn step5a(&mut self) {
        if !self.ends_with("e") {
            return;
        }
        let stem = self.stem_len("e");
        let m = self.measure(stem);
        if m > 1 || (m == 1 && !self.ends_cvc(stem)) {
            self.0.truncate(stem);
        }
    }

    fn step5b(&mut self) {
        let len = self.0.len();
        if self.measure(len) > 1 && self.ends_double_consonant(len) && self.0[len - 1] == b'l' {
            self.0.pop();
        }
    }
}
