//! Language registry.
//!
//! Every supported language is described by a [`LanguageSpec`]: a name, the
//! file extensions that select it, the comment syntaxes it uses and the
//! string-literal forms that must be skipped while looking for comments.
//! The table is compiled in and immutable, so it can be shared freely between
//! scanner threads.

use std::collections::HashMap;
use std::path::Path;
use std::sync::LazyLock;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntaxKind {
    SingleLine,
    MultiLine,
}

/// Contexts in which an otherwise matching marker is not a comment start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Guard {
    /// Marker text inside a string literal is ignored.
    StringLiteral,
    /// A `//`-family marker directly preceded by `:` (as in `https://`).
    UrlScheme,
    /// Both markers are only recognized in column 1.
    LineStart,
}

/// One comment extraction rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentSyntax {
    pub kind: SyntaxKind,
    pub start_marker: &'static str,
    pub end_marker: Option<&'static str>,
    pub guards: Vec<Guard>,
}

impl CommentSyntax {
    pub fn single(marker: &'static str) -> Self {
        let mut guards = vec![Guard::StringLiteral];
        if marker.starts_with("//") {
            guards.push(Guard::UrlScheme);
        }
        CommentSyntax {
            kind: SyntaxKind::SingleLine,
            start_marker: marker,
            end_marker: None,
            guards,
        }
    }

    pub fn multi(start: &'static str, end: &'static str) -> Self {
        let mut guards = vec![Guard::StringLiteral];
        if start.starts_with("//") {
            guards.push(Guard::UrlScheme);
        }
        CommentSyntax {
            kind: SyntaxKind::MultiLine,
            start_marker: start,
            end_marker: Some(end),
            guards,
        }
    }

    /// Restricts both markers to column 1.
    pub fn at_line_start(mut self) -> Self {
        self.guards.push(Guard::LineStart);
        self
    }

    pub fn has_guard(&self, guard: Guard) -> bool {
        self.guards.contains(&guard)
    }

    pub fn is_single(&self) -> bool {
        self.kind == SyntaxKind::SingleLine
    }
}

/// A quoted literal whose contents never contain comments.
///
/// Strings are tracked within a single line only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringForm {
    pub open: &'static str,
    pub close: &'static str,
    /// Whether a backslash escapes the following character.
    pub escapes: bool,
}

impl StringForm {
    const fn quoted(delim: &'static str) -> Self {
        StringForm {
            open: delim,
            close: delim,
            escapes: true,
        }
    }

    const fn raw(open: &'static str, close: &'static str) -> Self {
        StringForm {
            open,
            close,
            escapes: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSpec {
    pub name: &'static str,
    pub extensions: Vec<&'static str>,
    /// Ordered so that no marker is shadowed by an earlier one that is its prefix.
    pub syntaxes: Vec<CommentSyntax>,
    /// Ordered longest opener first.
    pub strings: Vec<StringForm>,
}

pub struct Registry {
    languages: Vec<LanguageSpec>,
    by_extension: HashMap<&'static str, usize>,
}

impl Registry {
    fn new(languages: Vec<LanguageSpec>) -> Self {
        let mut by_extension = HashMap::new();
        for (idx, lang) in languages.iter().enumerate() {
            for ext in &lang.extensions {
                let prev = by_extension.insert(*ext, idx);
                assert!(prev.is_none(), "extension {ext} registered twice");
            }
        }
        Registry {
            languages,
            by_extension,
        }
    }

    pub fn languages(&self) -> &[LanguageSpec] {
        &self.languages
    }

    pub fn by_name(&self, name: &str) -> Option<&LanguageSpec> {
        self.languages.iter().find(|l| l.name == name)
    }

    pub fn by_extension(&self, ext: &str) -> Option<&LanguageSpec> {
        self.by_extension
            .get(ext.to_ascii_lowercase().as_str())
            .map(|&i| &self.languages[i])
    }
}

static REGISTRY: LazyLock<Registry> = LazyLock::new(|| Registry::new(builtin_languages()));

pub fn registry() -> &'static Registry {
    &REGISTRY
}

/// Looks up a language by its registered name.
pub fn language(name: &str) -> Option<&'static LanguageSpec> {
    registry().by_name(name)
}

/// Resolves the language of `path` from its (case-insensitive) extension.
pub fn identify_language(path: &Path) -> Result<&'static LanguageSpec, Error> {
    let unknown = || Error::UnknownExtension(path.to_path_buf());
    path.file_name().ok_or_else(unknown)?;
    let ext = path.extension().and_then(|e| e.to_str()).ok_or_else(unknown)?;
    registry()
        .by_extension(&format!(".{ext}"))
        .ok_or_else(unknown)
}

pub fn syntax_for(language: &LanguageSpec) -> &[CommentSyntax] {
    &language.syntaxes
}

/// Names of every registered language, sorted.
pub fn supported_languages() -> Vec<&'static str> {
    let mut names: Vec<_> = registry().languages().iter().map(|l| l.name).collect();
    names.sort_unstable();
    names
}

fn lang(
    name: &'static str,
    extensions: &[&'static str],
    syntaxes: Vec<CommentSyntax>,
    strings: Vec<StringForm>,
) -> LanguageSpec {
    LanguageSpec {
        name,
        extensions: extensions.to_vec(),
        syntaxes,
        strings,
    }
}

fn c_family() -> Vec<CommentSyntax> {
    vec![CommentSyntax::single("//"), CommentSyntax::multi("/*", "*/")]
}

fn quotes() -> Vec<StringForm> {
    vec![StringForm::quoted("\""), StringForm::quoted("'")]
}

fn builtin_languages() -> Vec<LanguageSpec> {
    use CommentSyntax as S;
    use StringForm as F;

    vec![
        lang("C", &[".c", ".h"], c_family(), quotes()),
        lang(
            "C++",
            &[".cpp", ".hpp", ".cc", ".cxx", ".hh", ".hxx"],
            c_family(),
            quotes(),
        ),
        lang(
            "C#",
            &[".cs"],
            c_family(),
            vec![F::raw("@\"", "\""), F::quoted("\""), F::quoted("'")],
        ),
        lang("CSS", &[".css"], vec![S::multi("/*", "*/")], quotes()),
        lang(
            "Dart",
            &[".dart"],
            vec![S::single("///"), S::single("//"), S::multi("/*", "*/")],
            quotes(),
        ),
        lang(
            "Go",
            &[".go"],
            c_family(),
            vec![F::quoted("\""), F::quoted("'"), F::raw("`", "`")],
        ),
        lang(
            "Haskell",
            &[".hs"],
            vec![S::single("--"), S::multi("{-", "-}")],
            vec![F::quoted("\"")],
        ),
        lang(
            "HTML",
            &[".html", ".htm"],
            vec![S::multi("<!--", "-->"), S::multi("/*", "*/")],
            vec![F::raw("\"", "\"")],
        ),
        lang("Java", &[".java"], c_family(), quotes()),
        lang(
            "JavaScript",
            &[".js", ".mjs", ".cjs", ".jsx"],
            c_family(),
            vec![F::quoted("\""), F::quoted("'"), F::quoted("`")],
        ),
        lang("Kotlin", &[".kt", ".kts"], c_family(), quotes()),
        lang(
            "MATLAB",
            &[".m"],
            vec![S::multi("%{", "%}"), S::single("%")],
            vec![F::raw("\"", "\"")],
        ),
        lang(
            "Perl",
            &[".pl", ".pm"],
            vec![S::single("#"), S::multi("=begin", "=cut").at_line_start()],
            quotes(),
        ),
        lang("PHP", &[".php"], c_family(), quotes()),
        lang(
            "Python",
            &[".py", ".pyw"],
            vec![
                S::single("#"),
                S::multi("'''", "'''"),
                S::multi("\"\"\"", "\"\"\""),
            ],
            quotes(),
        ),
        lang("R", &[".r"], vec![S::single("#")], quotes()),
        lang(
            "Ruby",
            &[".rb"],
            vec![S::single("#"), S::multi("=begin", "=end").at_line_start()],
            quotes(),
        ),
        lang(
            "Rust",
            &[".rs"],
            c_family(),
            vec![F::raw("r#\"", "\"#"), F::raw("r\"", "\""), F::quoted("\"")],
        ),
        lang("Scala", &[".scala", ".sc"], c_family(), quotes()),
        lang(
            "SCSS",
            &[".scss"],
            vec![S::single("///"), S::single("//"), S::multi("/*", "*/")],
            quotes(),
        ),
        lang(
            "Shell",
            &[".sh", ".bash"],
            vec![S::single("#")],
            vec![F::quoted("\""), F::raw("'", "'")],
        ),
        lang("Swift", &[".swift"], c_family(), quotes()),
        lang(
            "TypeScript",
            &[".ts", ".tsx"],
            c_family(),
            vec![F::quoted("\""), F::quoted("'"), F::quoted("`")],
        ),
    ]
}
