//! Random source files built from a language's own markers and quotes.

use commex::{Guard, LanguageSpec, SyntaxKind};
use rand::seq::SliceRandom;
use rand::Rng;

const WORDS: &[&str] = &[
    "alpha", "beta", "count", "x", "y1", "total", "Copyright", "2018", "TODO", "é", "naïve",
    "print(x)", "return", "value",
];

const PUNCT: &[&str] = &[
    ":", "/", "\\", "*", "-", "{", "}", "#", "%", "=", "<", ">", "!", "(", ")", ";", " ", "  ",
    "\t", "'", "\"", "`", "@", "r",
];

struct Pools<'a> {
    spec: &'a LanguageSpec,
    singles: Vec<&'static str>,
    blocks: Vec<(&'static str, &'static str, bool)>,
}

impl<'a> Pools<'a> {
    fn new(spec: &'a LanguageSpec) -> Self {
        let singles = spec
            .syntaxes
            .iter()
            .filter(|s| s.kind == SyntaxKind::SingleLine)
            .map(|s| s.start_marker)
            .collect();
        let blocks = spec
            .syntaxes
            .iter()
            .filter(|s| s.kind == SyntaxKind::MultiLine)
            .map(|s| {
                (
                    s.start_marker,
                    s.end_marker.unwrap(),
                    s.guards.contains(&Guard::LineStart),
                )
            })
            .collect();
        Pools {
            spec,
            singles,
            blocks,
        }
    }

    /// Any marker, quote or noise fragment.
    fn fragment<R: Rng>(&self, rng: &mut R) -> String {
        match rng.gen_range(0..6) {
            0 => WORDS.choose(rng).unwrap().to_string(),
            1 => PUNCT.choose(rng).unwrap().to_string(),
            2 if !self.singles.is_empty() => self.singles.choose(rng).unwrap().to_string(),
            3 if !self.blocks.is_empty() => {
                let (s, e, _) = self.blocks.choose(rng).unwrap();
                if rng.gen_bool(0.5) { s } else { e }.to_string()
            }
            4 => {
                let f = self.spec.strings.choose(rng).unwrap();
                if rng.gen_bool(0.5) { f.open } else { f.close }.to_string()
            }
            _ => " ".to_string(),
        }
    }

    fn words<R: Rng>(&self, rng: &mut R, max: usize) -> String {
        let n = rng.gen_range(0..=max);
        (0..n)
            .map(|_| *WORDS.choose(rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// A string literal containing comment markers.
    fn noisy_string<R: Rng>(&self, rng: &mut R) -> String {
        let form = self.spec.strings.choose(rng).unwrap();
        let mut inner = String::new();
        for _ in 0..rng.gen_range(0..4) {
            let piece = self.fragment(rng);
            if piece.contains(form.close) || piece.contains('\\') {
                continue;
            }
            inner.push_str(&piece);
        }
        if form.escapes && rng.gen_bool(0.3) {
            inner.push('\\');
            inner.push_str(&form.close[..1]);
        }
        format!("{}{}{}", form.open, inner, form.close)
    }

    fn code<R: Rng>(&self, rng: &mut R) -> String {
        let mut s = format!("{} = ", WORDS.choose(rng).unwrap());
        match rng.gen_range(0..4) {
            0 => s.push_str(&self.noisy_string(rng)),
            1 => s.push_str("fetch(http://example.com/a)"),
            2 => s.push_str(&format!("f({}, {})", self.noisy_string(rng), rng.gen_range(0..99))),
            _ => s.push_str(&rng.gen_range(0..1000).to_string()),
        }
        s
    }

    fn indent<R: Rng>(&self, rng: &mut R) -> &'static str {
        ["", "", "  ", "    ", "\t"].choose(rng).unwrap()
    }

    fn push_lines<R: Rng>(&self, rng: &mut R, out: &mut Vec<String>) {
        match rng.gen_range(0..12) {
            0 => out.push(String::new()),
            1 => out.push("   ".into()),
            2 | 3 => out.push(format!("{}{}", self.indent(rng), self.code(rng))),
            4 if !self.singles.is_empty() => {
                let m = self.singles.choose(rng).unwrap();
                let lead = if rng.gen_bool(0.2) { m.repeat(2) } else { m.to_string() };
                out.push(format!("{}{} {}", self.indent(rng), lead, self.words(rng, 5)));
            }
            5 if !self.singles.is_empty() => {
                let m = self.singles.choose(rng).unwrap();
                out.push(format!("{} {} {}", self.code(rng), m, self.words(rng, 4)));
            }
            6 if !self.singles.is_empty() => {
                // commented-out code
                let m = self.singles.choose(rng).unwrap();
                out.push(format!("{m} {}", self.code(rng)));
            }
            7 if !self.blocks.is_empty() => {
                let (s, e, col0) = *self.blocks.choose(rng).unwrap();
                if col0 {
                    out.push(format!("{s} {}", self.words(rng, 3)));
                    out.push(self.words(rng, 4));
                    out.push(e.to_string());
                } else {
                    let pre = if rng.gen_bool(0.5) { self.code(rng) + " " } else { String::new() };
                    out.push(format!("{pre}{s} {} {e}", self.words(rng, 4)));
                }
            }
            8 if !self.blocks.is_empty() => {
                let (s, e, col0) = *self.blocks.choose(rng).unwrap();
                let indent = if col0 { "" } else { self.indent(rng) };
                out.push(format!("{indent}{s}{}", self.words(rng, 3)));
                for _ in 0..rng.gen_range(0..4) {
                    let body = match rng.gen_range(0..3) {
                        0 => String::new(),
                        1 => self.code(rng),
                        _ => format!(" * {}", self.words(rng, 5)),
                    };
                    out.push(body);
                }
                if rng.gen_bool(0.05) {
                    return; // left open
                }
                if col0 {
                    out.push(e.to_string());
                } else {
                    let tail = match rng.gen_range(0..3) {
                        0 => format!(" {}", self.code(rng)),
                        1 if !self.singles.is_empty() => {
                            format!(" {} tail", self.singles.choose(rng).unwrap())
                        }
                        _ => String::new(),
                    };
                    out.push(format!("{} {e}{tail}", self.words(rng, 3)));
                }
            }
            9 => {
                // arbitrary fragment soup
                let n = rng.gen_range(1..10);
                out.push((0..n).map(|_| self.fragment(rng)).collect());
            }
            _ => out.push(format!("{}{}", self.indent(rng), self.code(rng))),
        }
    }
}

/// Generates one file; CRLF endings and a missing final newline appear
/// occasionally.
pub fn generate<R: Rng>(spec: &LanguageSpec, rng: &mut R) -> String {
    let pools = Pools::new(spec);
    let mut lines = Vec::new();
    let target = rng.gen_range(0..40);
    while lines.len() < target {
        pools.push_lines(rng, &mut lines);
    }
    let sep = if rng.gen_bool(0.15) { "\r\n" } else { "\n" };
    let mut text = lines.join(sep);
    if !lines.is_empty() && rng.gen_bool(0.8) {
        text.push_str(sep);
    }
    text
}

/// Full corpus: `per_language` files for every registered language.
pub fn corpus(per_language: usize, seed: u64) -> Vec<(&'static LanguageSpec, String)> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for spec in commex::registry::registry().languages() {
        for _ in 0..per_language {
            out.push((spec, generate(spec, &mut rng)));
        }
    }
    out
}
