use std::fmt::Write as _;

use serde::Serialize;

/// One pass/fail judgement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaEntry {
    pub word: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationEntry {
    pub on: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerEntry {
    pub generator: String,
    pub degree: u32,
    pub derivation: Vec<DerivationEntry>,
}

/// Everything a command has to say. Serialised as the `--json` document and
/// rendered as plain text on stdout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<GammaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tower: Vec<TowerEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn item(&mut self, s: impl Into<String>) {
        self.items.push(s.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.diagnostics.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict_named(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pbw {}", self.command);
        match (&self.bound, &self.field) {
            (Some(d), Some(f)) => {
                let _ = writeln!(out, "certified up to degree D = {d} over {f}");
            }
            (Some(d), None) => {
                let _ = writeln!(out, "certified up to degree D = {d}");
            }
            _ => {}
        }
        if let Some(d) = &self.digest {
            let _ = writeln!(out, "presentation digest {d}");
        }
        for v in &self.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{mark} {}", v.name);
            } else {
                let _ = writeln!(out, "{mark} {}: {}", v.name, v.detail);
            }
        }
        if !self.gamma.is_empty() {
            let words: Vec<&str> = self.gamma.iter().map(|g| g.word.as_str()).collect();
            let _ = writeln!(out, "Γ ({}): {}", self.gamma.len(), words.join(" < "));
        }
        if let Some(h) = &self.hilbert {
            let coeffs: Vec<String> = h.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "hilbert: {}", coeffs.join(", "));
        }
        for (i, level) in self.tower.iter().enumerate() {
            let _ = writeln!(out, "z{} = [{}] (degree {})", i + 1, level.generator, level.degree);
            for d in &level.derivation {
                let _ = writeln!(out, "  δ{}({}) = {}", i + 1, d.on, d.value);
            }
        }
        for item in &self.items {
            let _ = writeln!(out, "{item}");
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}
