//! Tiling definitions: alphabet, generator and symmetry, plus the JSON
//! definition document format and supertile generation.
//!
//! A definition document looks like
//!
//! ```json
//! {
//!   "name": "fibonacci",
//!   "dimension": 1,
//!   "alphabet": ["a", "b"],
//!   "generator": { "type": "substitution_1d", "rules": { "a": ["a", "b"], "b": ["a"] } },
//!   "symmetry": "continuous"
//! }
//! ```
//!
//! Generator variants:
//!
//! * `substitution_1d` with `rules`: label -> nonempty list of labels.
//! * `block_substitution_2d` with `rules`: label -> k x k array of rows, the
//!   same k >= 2 for every label.
//! * `allowed_blocks` with `blocks`: the complete list of admissible patches of
//!   one size (words in 1D, arrays of rows in 2D).
//! * `periodic` with `pattern`: a word (1D) or array of rows (2D) repeated
//!   in every direction.
//!
//! 2D arrays are row-major lists of rows and row 0 is the top row.

use serde_json::{json, Map, Value};
use std::fmt;
use thiserror::Error;

use crate::pattern::{Pattern, Shape, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    One,
    Two,
}

impl Dimension {
    pub fn as_usize(self) -> usize {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
        }
    }

    /// Window shape of a centered collar of the given depth.
    pub fn collar_shape(self, depth: usize) -> Shape {
        match self {
            Dimension::One => Shape::line(2 * depth + 1),
            Dimension::Two => Shape::square(2 * depth + 1),
        }
    }
}

/// Translation group acting on the tilings: Z^d (subshift) or R^d (its suspension).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Discrete,
    Continuous,
}

impl Symmetry {
    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::Discrete => "discrete",
            Symmetry::Continuous => "continuous",
        }
    }
}

/// Ordered prototile labels. The declared order is the canonical symbol order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn new(labels: Vec<String>) -> Self {
        Alphabet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.labels.len()).map(|i| Symbol(i as u16))
    }

    pub fn symbol(&self, label: &str) -> Option<Symbol> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Symbol(i as u16))
    }

    pub fn label(&self, symbol: Symbol) -> &str {
        &self.labels[symbol.index()]
    }

    /// Text form of a pattern: labels concatenated when every label is a single
    /// character, comma separated otherwise; rows joined by '/'.
    pub fn render(&self, pattern: &Pattern) -> String {
        let compact = self.labels.iter().all(|l| l.chars().count() == 1);
        let sep = if compact { "" } else { "," };
        pattern
            .rows()
            .map(|row| {
                row.iter()
                    .map(|&s| self.label(s))
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Image word for each symbol, indexed by symbol.
    Substitution1d { images: Vec<Pattern> },
    /// k x k image block for each symbol, indexed by symbol.
    BlockSubstitution2d { expansion: usize, images: Vec<Pattern> },
    /// Every admissible patch of the declared block shape.
    AllowedBlocks { blocks: Vec<Pattern> },
    Periodic { pattern: Pattern },
}

impl Generator {
    pub fn type_name(&self) -> &'static str {
        match self {
            Generator::Substitution1d { .. } => "substitution_1d",
            Generator::BlockSubstitution2d { .. } => "block_substitution_2d",
            Generator::AllowedBlocks { .. } => "allowed_blocks",
            Generator::Periodic { .. } => "periodic",
        }
    }

    pub fn is_substitution(&self) -> bool {
        matches!(
            self,
            Generator::Substitution1d { .. } | Generator::BlockSubstitution2d { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingDefinition {
    pub name: String,
    pub dimension: Dimension,
    pub alphabet: Alphabet,
    pub generator: Generator,
    pub symmetry: Symmetry,
}

/// A problem with one field of a definition document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum DefinitionError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid definition: {}", join_diagnostics(.0))]
    Semantic(Vec<Diagnostic>),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl DefinitionError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            DefinitionError::Syntax(_) => &[],
            DefinitionError::Semantic(d) => d,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("generator `{0}` is not a substitution")]
    NotSubstitution(&'static str),
    #[error("pattern dimension does not match the definition")]
    DimensionMismatch,
    #[error("pattern uses a symbol outside the alphabet")]
    UnknownSymbol,
}

struct Checker {
    diags: Vec<Diagnostic>,
}

impl Checker {
    fn fail(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            field: field.into(),
            message: message.into(),
        });
    }
}

/// Parses and validates a JSON definition document.
pub fn parse_definition(text: &str) -> Result<TilingDefinition, DefinitionError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| DefinitionError::Syntax(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| DefinitionError::Syntax("top level must be a JSON object".into()))?;
    let mut ck = Checker { diags: Vec::new() };

    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "name" | "dimension" | "alphabet" | "generator" | "symmetry"
        ) {
            ck.fail(key.clone(), "unknown field");
        }
    }

    let name = match obj.get("name").and_then(Value::as_str) {
        Some(n) if is_identifier(n) => n.to_string(),
        Some(_) => {
            ck.fail("name", "must be a nonempty identifier of [A-Za-z0-9_-]");
            String::new()
        }
        None => {
            ck.fail("name", "missing or not a string");
            String::new()
        }
    };

    let dimension = match obj.get("dimension").and_then(Value::as_u64) {
        Some(1) => Some(Dimension::One),
        Some(2) => Some(Dimension::Two),
        _ => {
            ck.fail("dimension", "must be 1 or 2");
            None
        }
    };

    let symmetry = match obj.get("symmetry").and_then(Value::as_str) {
        Some("discrete") => Some(Symmetry::Discrete),
        Some("continuous") => Some(Symmetry::Continuous),
        _ => {
            ck.fail("symmetry", "must be \"discrete\" or \"continuous\"");
            None
        }
    };

    let alphabet = parse_alphabet(obj.get("alphabet"), &mut ck);

    let generator = match (obj.get("generator"), dimension, &alphabet) {
        (None, _, _) => {
            ck.fail("generator", "missing");
            None
        }
        (Some(g), Some(dim), Some(alpha)) => parse_generator(g, dim, alpha, &mut ck),
        _ => None,
    };

    match (ck.diags.is_empty(), dimension, alphabet, generator, symmetry) {
        (true, Some(dimension), Some(alphabet), Some(generator), Some(symmetry)) => {
            Ok(TilingDefinition {
                name,
                dimension,
                alphabet,
                generator,
                symmetry,
            })
        }
        _ => Err(DefinitionError::Semantic(ck.diags)),
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_alphabet(value: Option<&Value>, ck: &mut Checker) -> Option<Alphabet> {
    let Some(items) = value.and_then(Value::as_array) else {
        ck.fail("alphabet", "missing or not an array");
        return None;
    };
    if items.is_empty() {
        ck.fail("alphabet", "must be nonempty");
        return None;
    }
    if items.len() > u16::MAX as usize {
        ck.fail("alphabet", "too many labels");
        return None;
    }
    let mut labels: Vec<String> = Vec::with_capacity(items.len());
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        match item.as_str() {
            Some(l) if l.is_empty() || l.contains(['/', ',']) || l.chars().any(char::is_whitespace) => {
                ck.fail(format!("alphabet[{i}]"), "labels must be nonempty without whitespace, '/' or ','");
                ok = false;
            }
            Some(l) if labels.iter().any(|x| x == l) => {
                ck.fail(format!("alphabet[{i}]"), format!("duplicate label '{l}'"));
                ok = false;
            }
            Some(l) => labels.push(l.to_string()),
            None => {
                ck.fail(format!("alphabet[{i}]"), "label must be a string");
                ok = false;
            }
        }
    }
    ok.then(|| Alphabet::new(labels))
}

fn parse_word(value: &Value, field: &str, alphabet: &Alphabet, ck: &mut Checker) -> Option<Vec<Symbol>> {
    let Some(items) = value.as_array() else {
        ck.fail(field, "expected an array of labels");
        return None;
    };
    let mut word = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match item.as_str().map(|l| (l, alphabet.symbol(l))) {
            Some((_, Some(s))) => word.push(s),
            Some((l, None)) => {
                ck.fail(format!("{field}[{i}]"), format!("unknown label '{l}'"));
                return None;
            }
            None => {
                ck.fail(format!("{field}[{i}]"), "label must be a string");
                return None;
            }
        }
    }
    Some(word)
}

fn parse_array(value: &Value, field: &str, alphabet: &Alphabet, ck: &mut Checker) -> Option<Pattern> {
    let Some(rows) = value.as_array() else {
        ck.fail(field, "expected an array of rows");
        return None;
    };
    if rows.is_empty() {
        ck.fail(field, "array must be nonempty");
        return None;
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        parsed.push(parse_word(row, &format!("{field}[{i}]"), alphabet, ck)?);
    }
    if parsed[0].is_empty() {
        ck.fail(field, "array rows must be nonempty");
        return None;
    }
    let pattern = Pattern::from_rows(parsed);
    if pattern.is_none() {
        ck.fail(field, "ragged array: rows differ in length");
    }
    pattern
}

fn parse_patch(
    value: &Value,
    field: &str,
    dim: Dimension,
    alphabet: &Alphabet,
    ck: &mut Checker,
) -> Option<Pattern> {
    match dim {
        Dimension::One => {
            let word = parse_word(value, field, alphabet, ck)?;
            if word.is_empty() {
                ck.fail(field, "word must be nonempty");
                return None;
            }
            Pattern::from_word(word)
        }
        Dimension::Two => parse_array(value, field, alphabet, ck),
    }
}

/// Reads `rules` into one image per symbol, in alphabet order.
fn parse_rules(
    gen: &Map<String, Value>,
    alphabet: &Alphabet,
    ck: &mut Checker,
    mut image: impl FnMut(&Value, &str, &mut Checker) -> Option<Pattern>,
) -> Option<Vec<Pattern>> {
    let Some(rules) = gen.get("rules").and_then(Value::as_object) else {
        ck.fail("generator.rules", "missing or not an object");
        return None;
    };
    let mut ok = true;
    for key in rules.keys() {
        if alphabet.symbol(key).is_none() {
            ck.fail(format!("generator.rules.{key}"), format!("unknown label '{key}'"));
            ok = false;
        }
    }
    let mut images = Vec::with_capacity(alphabet.len());
    for label in alphabet.labels() {
        let field = format!("generator.rules.{label}");
        match rules.get(label) {
            None => {
                ck.fail(field, "missing rule");
                ok = false;
            }
            Some(v) => match image(v, &field, ck) {
                Some(p) => images.push(p),
                None => ok = false,
            },
        }
    }
    ok.then_some(images)
}

fn parse_generator(
    value: &Value,
    dim: Dimension,
    alphabet: &Alphabet,
    ck: &mut Checker,
) -> Option<Generator> {
    let Some(gen) = value.as_object() else {
        ck.fail("generator", "must be an object");
        return None;
    };
    let kind = gen.get("type").and_then(Value::as_str).unwrap_or("");
    let allowed_keys: &[&str] = match kind {
        "substitution_1d" | "block_substitution_2d" => &["type", "rules"],
        "allowed_blocks" => &["type", "blocks"],
        "periodic" => &["type", "pattern"],
        _ => {
            ck.fail(
                "generator.type",
                "must be one of substitution_1d, block_substitution_2d, allowed_blocks, periodic",
            );
            return None;
        }
    };
    for key in gen.keys() {
        if !allowed_keys.contains(&key.as_str()) {
            ck.fail(format!("generator.{key}"), "unknown field");
        }
    }

    match kind {
        "substitution_1d" => {
            if dim != Dimension::One {
                ck.fail("generator.type", "substitution_1d requires dimension 1");
                return None;
            }
            let images = parse_rules(gen, alphabet, ck, |v, field, ck| {
                let word = parse_word(v, field, alphabet, ck)?;
                if word.is_empty() {
                    ck.fail(field, "empty substitution image");
                    return None;
                }
                Pattern::from_word(word)
            })?;
            Some(Generator::Substitution1d { images })
        }
        "block_substitution_2d" => {
            if dim != Dimension::Two {
                ck.fail("generator.type", "block_substitution_2d requires dimension 2");
                return None;
            }
            let images = parse_rules(gen, alphabet, ck, |v, field, ck| {
                let p = parse_array(v, field, alphabet, ck)?;
                if p.width() != p.height() {
                    ck.fail(field, "image block must be square");
                    return None;
                }
                if p.width() < 2 {
                    ck.fail(field, "image block must be at least 2x2");
                    return None;
                }
                Some(p)
            })?;
            let expansion = images[0].width();
            if images.iter().any(|p| p.width() != expansion) {
                ck.fail("generator.rules", "non-uniform expansion");
                return None;
            }
            Some(Generator::BlockSubstitution2d { expansion, images })
        }
        "allowed_blocks" => {
            let Some(items) = gen.get("blocks").and_then(Value::as_array) else {
                ck.fail("generator.blocks", "missing or not an array");
                return None;
            };
            if items.is_empty() {
                ck.fail("generator.blocks", "must list at least one block");
                return None;
            }
            let mut blocks = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                blocks.push(parse_patch(item, &format!("generator.blocks[{i}]"), dim, alphabet, ck)?);
            }
            let shape = blocks[0].shape();
            if blocks.iter().any(|b| b.shape() != shape) {
                ck.fail("generator.blocks", "all blocks must have the same shape");
                return None;
            }
            blocks.sort();
            blocks.dedup();
            Some(Generator::AllowedBlocks { blocks })
        }
        "periodic" => {
            let Some(v) = gen.get("pattern") else {
                ck.fail("generator.pattern", "missing");
                return None;
            };
            let pattern = parse_patch(v, "generator.pattern", dim, alphabet, ck)?;
            Some(Generator::Periodic { pattern })
        }
        _ => unreachable!(),
    }
}

impl TilingDefinition {
    /// Parses a definition document; see [`parse_definition`].
    pub fn parse(text: &str) -> Result<Self, DefinitionError> {
        parse_definition(text)
    }

    fn patch_json(&self, p: &Pattern) -> Value {
        let row = |r: &[Symbol]| -> Value {
            Value::Array(
                r.iter()
                    .map(|&s| Value::String(self.alphabet.label(s).to_string()))
                    .collect(),
            )
        };
        match self.dimension {
            Dimension::One => row(p.cells()),
            Dimension::Two => Value::Array(p.rows().map(row).collect()),
        }
    }

    pub fn to_json(&self) -> Value {
        let generator = match &self.generator {
            Generator::Substitution1d { images } | Generator::BlockSubstitution2d { images, .. } => {
                let rules: Map<String, Value> = self
                    .alphabet
                    .symbols()
                    .map(|s| {
                        (
                            self.alphabet.label(s).to_string(),
                            self.patch_json(&images[s.index()]),
                        )
                    })
                    .collect();
                json!({ "type": self.generator.type_name(), "rules": rules })
            }
            Generator::AllowedBlocks { blocks } => json!({
                "type": "allowed_blocks",
                "blocks": blocks.iter().map(|b| self.patch_json(b)).collect::<Vec<_>>(),
            }),
            Generator::Periodic { pattern } => json!({
                "type": "periodic",
                "pattern": self.patch_json(pattern),
            }),
        };
        json!({
            "name": self.name,
            "dimension": self.dimension.as_usize(),
            "alphabet": self.alphabet.labels(),
            "generator": generator,
            "symmetry": self.symmetry.as_str(),
        })
    }

    /// Serializes back to a definition document accepted by [`parse_definition`].
    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("definition json")
    }
}

/// Applies the substitution once: every cell is replaced by its image.
///
/// Applied to an order-m supertile this yields the order-(m+1) supertile.
pub fn substitute(p: &Pattern, def: &TilingDefinition) -> Result<Pattern, SubstitutionError> {
    if p.cells().iter().any(|s| s.index() >= def.alphabet.len()) {
        return Err(SubstitutionError::UnknownSymbol);
    }
    match &def.generator {
        Generator::Substitution1d { images } => {
            if p.height() != 1 {
                return Err(SubstitutionError::DimensionMismatch);
            }
            Ok(Pattern::concat(p.cells().iter().map(|s| &images[s.index()])).expect("nonempty images"))
        }
        Generator::BlockSubstitution2d { expansion, images } => {
            let k = *expansion;
            let shape = Shape::new(p.width() * k, p.height() * k);
            let mut cells = Vec::with_capacity(shape.area());
            for r in 0..shape.height {
                for c in 0..shape.width {
                    let image = &images[p.get(r / k, c / k).index()];
                    cells.push(image.get(r % k, c % k));
                }
            }
            Ok(Pattern::new(shape, cells).expect("block image"))
        }
        other => Err(SubstitutionError::NotSubstitution(other.type_name())),
    }
}
