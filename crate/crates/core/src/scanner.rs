//! Comment extraction engine.
//!
//! Each line is scanned left to right. A regex built from every comment
//! marker and string opener of the language locates the next position of
//! interest; a small state machine then decides whether that position opens a
//! comment, opens a string literal (whose contents are skipped), or is guarded
//! and must be stepped over. String state never crosses a line boundary;
//! multi-line comment state does.
//!
//! Within a line the earliest unguarded marker wins, and at a single position
//! markers are tried in registry order before string openers.

use std::ops::Range;

use regex::Regex;

use crate::registry::{CommentSyntax, Guard, LanguageSpec, StringForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommentKind {
    Single,
    MultiBlock,
}

/// One extracted comment. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CommentRecord {
    Single {
        text: String,
        line_number: usize,
        /// Code precedes the marker on the same line.
        inline: bool,
    },
    MultiBlock {
        text: String,
        start_line: usize,
        end_line: usize,
    },
}

impl CommentRecord {
    pub fn kind(&self) -> CommentKind {
        match self {
            CommentRecord::Single { .. } => CommentKind::Single,
            CommentRecord::MultiBlock { .. } => CommentKind::MultiBlock,
        }
    }

    pub fn text(&self) -> &str {
        match self {
            CommentRecord::Single { text, .. } | CommentRecord::MultiBlock { text, .. } => text,
        }
    }

    pub fn first_line(&self) -> usize {
        match *self {
            CommentRecord::Single { line_number, .. } => line_number,
            CommentRecord::MultiBlock { start_line, .. } => start_line,
        }
    }

    pub fn last_line(&self) -> usize {
        match *self {
            CommentRecord::Single { line_number, .. } => line_number,
            CommentRecord::MultiBlock { end_line, .. } => end_line,
        }
    }

    /// Inclusive line range covered by the record.
    pub fn lines(&self) -> std::ops::RangeInclusive<usize> {
        self.first_line()..=self.last_line()
    }

    pub fn is_inline(&self) -> bool {
        matches!(self, CommentRecord::Single { inline: true, .. })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtractionResult {
    pub singles: Vec<CommentRecord>,
    pub blocks: Vec<CommentRecord>,
    pub warnings: Vec<String>,
}

impl ExtractionResult {
    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.blocks.is_empty()
    }

    /// All records ordered by first line.
    pub fn records(&self) -> Vec<&CommentRecord> {
        let mut all: Vec<_> = self.singles.iter().chain(&self.blocks).collect();
        all.sort_by_key(|r| r.first_line());
        all
    }
}

/// Lexical state carried between scanning steps.
///
/// `in_string` is the index of the active [`StringForm`]; `in_multiline` the
/// index of the open block syntax together with the line it started on.
#[derive(Debug, Clone)]
pub struct ScanState<'a> {
    pub strings: &'a [StringForm],
    pub in_string: Option<usize>,
    pub in_multiline: Option<(usize, usize)>,
}

impl<'a> ScanState<'a> {
    pub fn new(strings: &'a [StringForm]) -> Self {
        ScanState {
            strings,
            in_string: None,
            in_multiline: None,
        }
    }

    /// Strings do not continue onto the next line.
    fn end_line(&mut self) {
        self.in_string = None;
    }
}

/// A comment region found on one line, as byte offsets into that line.
#[derive(Debug, Clone)]
struct Piece {
    syntax: usize,
    /// Bytes removed when stripping; includes the markers.
    region: Range<usize>,
    /// Comment content between the markers.
    body: Range<usize>,
    opens: bool,
    closes: bool,
}

enum Token {
    Comment(usize),
    String(usize),
    Skip(usize),
}

struct Lexer<'a> {
    syntaxes: &'a [CommentSyntax],
    strings: &'a [StringForm],
    finder: Option<Regex>,
}

impl<'a> Lexer<'a> {
    fn new(syntaxes: &'a [CommentSyntax], strings: &'a [StringForm]) -> Self {
        let mut literals: Vec<&str> = syntaxes
            .iter()
            .map(|s| s.start_marker)
            .chain(strings.iter().map(|f| f.open))
            .collect();
        literals.sort_by_key(|l| std::cmp::Reverse(l.len()));
        literals.dedup();
        let finder = (!literals.is_empty()).then(|| {
            let pattern = literals
                .iter()
                .map(|l| regex::escape(l))
                .collect::<Vec<_>>()
                .join("|");
            Regex::new(&pattern).expect("escaped literals always compile")
        });
        Lexer {
            syntaxes,
            strings,
            finder,
        }
    }

    fn token_at(&self, line: &str, at: usize) -> Token {
        let rest = &line[at..];
        let mut url_guarded = false;
        for (idx, syntax) in self.syntaxes.iter().enumerate() {
            if !rest.starts_with(syntax.start_marker) {
                continue;
            }
            if syntax.has_guard(Guard::LineStart) && at != 0 {
                continue;
            }
            if syntax.has_guard(Guard::UrlScheme) && line[..at].ends_with(':') {
                url_guarded = true;
                continue;
            }
            return Token::Comment(idx);
        }
        if let Some(idx) = self.strings.iter().position(|f| rest.starts_with(f.open)) {
            return Token::String(idx);
        }
        if url_guarded {
            let run = rest.len() - rest.trim_start_matches('/').len();
            return Token::Skip(run);
        }
        Token::Skip(rest.chars().next().map_or(1, char::len_utf8))
    }

    /// Returns the offset just past the closing delimiter, or `None` when
    /// the string runs to the end of the line.
    fn skip_string(&self, line: &str, from: usize, form: &StringForm) -> Option<usize> {
        let mut chars = line[from..].char_indices();
        while let Some((off, ch)) = chars.next() {
            let at = from + off;
            if form.escapes && ch == '\\' {
                chars.next();
                continue;
            }
            if line[at..].starts_with(form.close) {
                return Some(at + form.close.len());
            }
        }
        None
    }

    fn find_end(&self, line: &str, from: usize, syntax: &CommentSyntax) -> Option<usize> {
        let end = syntax.end_marker.expect("multi-line syntax has an end marker");
        if syntax.has_guard(Guard::LineStart) {
            (from == 0 && line.starts_with(end)).then_some(0)
        } else {
            line[from..].find(end).map(|i| from + i)
        }
    }

    fn scan_line(&self, line: &str, state: &mut ScanState<'_>, pieces: &mut Vec<Piece>) {
        let mut pos = 0;

        if let Some((idx, _)) = state.in_multiline {
            let syntax = &self.syntaxes[idx];
            match self.find_end(line, 0, syntax) {
                Some(end) => {
                    let stop = end + syntax.end_marker.unwrap().len();
                    pieces.push(Piece {
                        syntax: idx,
                        region: 0..stop,
                        body: 0..end,
                        opens: false,
                        closes: true,
                    });
                    state.in_multiline = None;
                    pos = stop;
                }
                None => {
                    pieces.push(Piece {
                        syntax: idx,
                        region: 0..line.len(),
                        body: 0..line.len(),
                        opens: false,
                        closes: false,
                    });
                    return;
                }
            }
        }

        if let Some(idx) = state.in_string.take() {
            match self.skip_string(line, pos, &self.strings[idx]) {
                Some(next) => pos = next,
                None => return,
            }
        }

        let Some(finder) = &self.finder else { return };
        while let Some(found) = finder.find_at(line, pos) {
            let at = found.start();
            match self.token_at(line, at) {
                Token::Skip(n) => pos = at + n,
                Token::String(idx) => {
                    let form = &self.strings[idx];
                    match self.skip_string(line, at + form.open.len(), form) {
                        Some(next) => pos = next,
                        None => return,
                    }
                }
                Token::Comment(idx) => {
                    let syntax = &self.syntaxes[idx];
                    let after = at + syntax.start_marker.len();
                    if syntax.is_single() {
                        pieces.push(Piece {
                            syntax: idx,
                            region: at..line.len(),
                            body: after..line.len(),
                            opens: true,
                            closes: true,
                        });
                        return;
                    }
                    match self.find_end(line, after, syntax) {
                        Some(end) => {
                            let stop = end + syntax.end_marker.unwrap().len();
                            pieces.push(Piece {
                                syntax: idx,
                                region: at..stop,
                                body: after..end,
                                opens: true,
                                closes: true,
                            });
                            pos = stop;
                        }
                        None => {
                            pieces.push(Piece {
                                syntax: idx,
                                region: at..line.len(),
                                body: after..line.len(),
                                opens: true,
                                closes: false,
                            });
                            state.in_multiline = Some((idx, 0));
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// A physical line: content without its terminator, and the terminator.
pub(crate) struct Line<'a> {
    pub content: &'a str,
    pub ending: &'a str,
}

/// Splits on LF, treating CRLF as one terminator. A trailing newline does not
/// start an extra line.
pub(crate) fn split_lines(text: &str) -> Vec<Line<'_>> {
    text.split_inclusive('\n')
        .map(|raw| {
            let content = match raw.strip_suffix('\n') {
                Some(body) => body.strip_suffix('\r').unwrap_or(body),
                None => raw,
            };
            Line {
                content,
                ending: &raw[content.len()..],
            }
        })
        .collect()
}

/// Strips the marker run and surrounding whitespace from a line comment body,
/// repeating while the remainder still opens with the marker.
fn normalize_single(body: &str, marker: &str) -> String {
    let mut text = body.trim_start_matches(|c| marker.contains(c)).trim();
    while text.starts_with(marker) {
        text = text.trim_start_matches(|c| marker.contains(c)).trim();
    }
    text.to_string()
}

fn normalize_block_head(mut body: &str, marker: &str) -> String {
    loop {
        let trimmed = body.trim_start();
        match trimmed.strip_prefix(marker) {
            Some(rest) => body = rest,
            None => return trimmed.trim_end().to_string(),
        }
    }
}

fn join_lines(texts: &[String]) -> String {
    texts.join("\n").trim().to_string()
}

/// Comment before per-line texts are joined.
#[derive(Debug)]
struct RawComment {
    kind: CommentKind,
    start: usize,
    end: usize,
    texts: Vec<String>,
    inline: bool,
}

impl RawComment {
    /// Absorbs a comment that begins on this one's last line.
    fn absorb(&mut self, next: RawComment) {
        let mut rest = next.texts.into_iter();
        if let (Some(last), Some(first)) = (self.texts.last_mut(), rest.next()) {
            if last.is_empty() {
                *last = first;
            } else if !first.is_empty() {
                last.push(' ');
                last.push_str(&first);
            }
        }
        self.texts.extend(rest);
        self.end = next.end;
        self.kind = CommentKind::MultiBlock;
        self.inline = false;
    }

    fn into_record(self) -> CommentRecord {
        match self.kind {
            CommentKind::Single => CommentRecord::Single {
                text: self.texts.into_iter().next().unwrap_or_default(),
                line_number: self.start,
                inline: self.inline,
            },
            CommentKind::MultiBlock => CommentRecord::MultiBlock {
                text: join_lines(&self.texts),
                start_line: self.start,
                end_line: self.end,
            },
        }
    }
}

struct LineScan<'t> {
    lines: Vec<Line<'t>>,
    pieces: Vec<Vec<Piece>>,
    unterminated: Option<(usize, &'static str)>,
}

fn scan_lines<'t>(text: &'t str, syntaxes: &[CommentSyntax], strings: &[StringForm]) -> LineScan<'t> {
    let lexer = Lexer::new(syntaxes, strings);
    let lines = split_lines(text);
    let mut state = ScanState::new(strings);
    let mut pieces = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let mut found = Vec::new();
        lexer.scan_line(line.content, &mut state, &mut found);
        if let Some((_, start)) = state.in_multiline.as_mut() {
            if *start == 0 {
                *start = i + 1;
            }
        }
        state.end_line();
        pieces.push(found);
    }
    let unterminated = state
        .in_multiline
        .map(|(idx, start)| (start, syntaxes[idx].end_marker.unwrap_or_default()));
    LineScan {
        lines,
        pieces,
        unterminated,
    }
}

fn raw_comments(scan: &LineScan<'_>, syntaxes: &[CommentSyntax]) -> Vec<RawComment> {
    let mut raw = Vec::new();
    let mut open: Option<RawComment> = None;
    for (i, (line, pieces)) in scan.lines.iter().zip(&scan.pieces).enumerate() {
        let line_no = i + 1;
        for p in pieces {
            let syntax = &syntaxes[p.syntax];
            let body = &line.content[p.body.clone()];
            if syntax.is_single() {
                raw.push(RawComment {
                    kind: CommentKind::Single,
                    start: line_no,
                    end: line_no,
                    texts: vec![normalize_single(body, syntax.start_marker)],
                    inline: !line.content[..p.region.start].trim().is_empty(),
                });
                continue;
            }
            if p.opens {
                open = Some(RawComment {
                    kind: CommentKind::MultiBlock,
                    start: line_no,
                    end: line_no,
                    texts: vec![normalize_block_head(body, syntax.start_marker)],
                    inline: false,
                });
            } else if let Some(block) = open.as_mut() {
                block.texts.push(body.trim().to_string());
            }
            if p.closes {
                if let Some(mut block) = open.take() {
                    block.end = line_no;
                    raw.push(block);
                }
            }
        }
    }
    if let Some(mut block) = open {
        block.end = scan.lines.len();
        raw.push(block);
    }
    raw
}

/// Folds comments sharing a line into the comment that precedes them.
fn coalesce(raw: Vec<RawComment>) -> Vec<RawComment> {
    let mut out: Vec<RawComment> = Vec::with_capacity(raw.len());
    for c in raw {
        match out.last_mut() {
            Some(prev) if prev.end == c.start => prev.absorb(c),
            _ => out.push(c),
        }
    }
    out
}

fn extract(text: &str, syntaxes: &[CommentSyntax], strings: &[StringForm]) -> ExtractionResult {
    let scan = scan_lines(text, syntaxes, strings);
    let mut warnings = Vec::new();
    if let Some((start, end)) = scan.unterminated {
        warnings.push(format!(
            "unterminated block starting at line {start}: missing {end:?}"
        ));
    }
    let mut singles = Vec::new();
    let mut blocks = Vec::new();
    for rec in coalesce(raw_comments(&scan, syntaxes)) {
        let rec = rec.into_record();
        match rec.kind() {
            CommentKind::Single => singles.push(rec),
            CommentKind::MultiBlock => blocks.push(rec),
        }
    }
    let (singles, merged) = merge_contiguous(singles);
    blocks.extend(merged);
    blocks.sort_by_key(CommentRecord::first_line);
    ExtractionResult {
        singles,
        blocks,
        warnings,
    }
}

/// Extracts every comment of `spec`'s syntaxes from `text`.
pub fn scan_file(text: &str, spec: &LanguageSpec) -> ExtractionResult {
    extract(text, &spec.syntaxes, &spec.strings)
}

/// Finds the first unguarded occurrence of a single-line `syntax` in `line`,
/// returning its normalized text and whether code precedes it.
pub fn match_single_line(
    line: &str,
    syntax: &CommentSyntax,
    state: &ScanState<'_>,
) -> Option<(String, bool)> {
    if !syntax.is_single() || state.in_multiline.is_some() {
        return None;
    }
    let syntaxes = std::slice::from_ref(syntax);
    let lexer = Lexer::new(syntaxes, state.strings);
    let mut local = ScanState::new(state.strings);
    local.in_string = state.in_string;
    let mut pieces = Vec::new();
    lexer.scan_line(line, &mut local, &mut pieces);
    pieces.first().map(|p| {
        (
            normalize_single(&line[p.body.clone()], syntax.start_marker),
            !line[..p.region.start].trim().is_empty(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatch {
    pub start_line: usize,
    pub end_line: usize,
    /// Content of each covered line, markers removed and trimmed.
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockScan {
    pub blocks: Vec<BlockMatch>,
    pub warnings: Vec<String>,
}

/// Finds every block of one multi-line `syntax`, considering no other
/// comment syntax. Blocks do not nest: the first end marker closes.
pub fn match_multiline(text: &str, syntax: &CommentSyntax, strings: &[StringForm]) -> BlockScan {
    if syntax.is_single() {
        return BlockScan::default();
    }
    let syntaxes = std::slice::from_ref(syntax);
    let scan = scan_lines(text, syntaxes, strings);
    let blocks = raw_comments(&scan, syntaxes)
        .into_iter()
        .map(|c| BlockMatch {
            start_line: c.start,
            end_line: c.end,
            lines: c.texts,
        })
        .collect();
    let warnings = scan
        .unterminated
        .map(|(start, _)| format!("unterminated block starting at line {start}"))
        .into_iter()
        .collect();
    BlockScan { blocks, warnings }
}

/// Collapses runs of two or more whole-line single comments on consecutive
/// lines into blocks. Inline comments never join a run.
///
/// Returns the singles that were left alone and the new blocks.
pub fn merge_contiguous(singles: Vec<CommentRecord>) -> (Vec<CommentRecord>, Vec<CommentRecord>) {
    let mut remaining = Vec::new();
    let mut merged = Vec::new();
    let mut run: Vec<CommentRecord> = Vec::new();

    for rec in singles {
        let extends = !rec.is_inline()
            && run
                .last()
                .is_some_and(|prev| prev.last_line() + 1 == rec.first_line());
        if !extends {
            flush_run(&mut run, &mut remaining, &mut merged);
        }
        if rec.is_inline() {
            remaining.push(rec);
        } else {
            run.push(rec);
        }
    }
    flush_run(&mut run, &mut remaining, &mut merged);
    remaining.sort_by_key(CommentRecord::first_line);
    (remaining, merged)
}

fn flush_run(
    run: &mut Vec<CommentRecord>,
    remaining: &mut Vec<CommentRecord>,
    merged: &mut Vec<CommentRecord>,
) {
    match run.len() {
        0 => {}
        1 => remaining.append(run),
        _ => {
            let texts: Vec<String> = run.iter().map(|r| r.text().to_string()).collect();
            merged.push(CommentRecord::MultiBlock {
                text: join_lines(&texts),
                start_line: run[0].first_line(),
                end_line: run[run.len() - 1].last_line(),
            });
            run.clear();
        }
    }
}

/// Removes every comment from `text`, leaving code and string literals as
/// they were.
///
/// Lines left empty by the removal are dropped. Lines that keep code lose
/// their trailing whitespace. A comment sitting between two code characters
/// is replaced by one space so the neighbours stay separate tokens, and a
/// column-1 marker exposed by the removal is pushed off column 1.
pub fn strip_comments(text: &str, spec: &LanguageSpec) -> String {
    let scan = scan_lines(text, &spec.syntaxes, &spec.strings);
    let mut out = String::with_capacity(text.len());
    for (line, pieces) in scan.lines.iter().zip(&scan.pieces) {
        if pieces.is_empty() {
            out.push_str(line.content);
            out.push_str(line.ending);
            continue;
        }
        let content = line.content;
        let mut kept = String::with_capacity(content.len());
        let mut pos = 0;
        for p in pieces {
            kept.push_str(&content[pos..p.region.start]);
            let before = content[..p.region.start].chars().next_back();
            let after = content[p.region.end..].chars().next();
            if let (Some(b), Some(a)) = (before, after) {
                if !b.is_whitespace() && !a.is_whitespace() {
                    kept.push(' ');
                }
            }
            pos = p.region.end;
        }
        kept.push_str(&content[pos..]);
        if kept.trim().is_empty() {
            continue;
        }
        let opens_line_start_block = spec
            .syntaxes
            .iter()
            .any(|s| s.has_guard(Guard::LineStart) && kept.starts_with(s.start_marker));
        if opens_line_start_block && !content.starts_with(kept.as_str()) {
            kept.insert(0, ' ');
        }
        out.push_str(kept.trim_end());
        out.push_str(line.ending);
    }
    out
}
