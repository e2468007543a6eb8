//! Graph arguments: either a path to an edge-list file or a named spec.
//!
//! Named specs:
//!
//! ```text
//! cycle:N  path:N  empty:N  complete:N  kbip:A,B  kminusm:N
//! cartesian:SPEC*SPEC  lexicographic:SPEC*SPEC  direct:SPEC*SPEC
//! ```

use std::fs;
use std::path::Path;

use distmagic::construct::{label_c4, label_complete_bipartite, label_complete_minus_matching};
use distmagic::{generate, product, Graph, GraphKind, Labeling, ProductKind};

pub type CliResult<T> = std::result::Result<T, String>;

pub fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn number(spec: &str, tok: &str) -> CliResult<usize> {
    tok.trim()
        .parse()
        .map_err(|_| format!("{spec}: `{tok}` is not a nonnegative integer"))
}

pub fn product_kind(name: &str) -> Option<ProductKind> {
    match name {
        "cartesian" => Some(ProductKind::Cartesian),
        "lexicographic" | "lex" => Some(ProductKind::Lexicographic),
        "direct" => Some(ProductKind::Direct),
        _ => None,
    }
}

/// Parses a named spec; `None` if `spec` is not of that form.
fn named(spec: &str) -> Option<CliResult<Graph>> {
    let (head, rest) = spec.split_once(':')?;
    if let Some(kind) = product_kind(head) {
        return Some((|| {
            let (a, b) = rest
                .split_once('*')
                .ok_or_else(|| format!("{spec}: expected `{head}:SPEC*SPEC`"))?;
            Ok(product(kind, &load_graph(a)?, &load_graph(b)?)
                .base()
                .clone())
        })());
    }
    let kind = match head {
        "cycle" => number(spec, rest).map(GraphKind::Cycle),
        "path" => number(spec, rest).map(GraphKind::Path),
        "empty" => number(spec, rest).map(GraphKind::Empty),
        "complete" => number(spec, rest).map(GraphKind::Complete),
        "kminusm" => number(spec, rest).map(GraphKind::CompleteMinusPerfectMatching),
        "kbip" => (|| {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| format!("{spec}: expected `kbip:A,B`"))?;
            Ok(GraphKind::CompleteBipartite(
                number(spec, a)?,
                number(spec, b)?,
            ))
        })(),
        _ => return None,
    };
    Some(kind.and_then(|k| generate(k).map_err(|e| format!("{spec}: {e}"))))
}

/// Loads a graph from a named spec or, failing that, an edge-list file.
pub fn load_graph(spec: &str) -> CliResult<Graph> {
    if let Some(g) = named(spec) {
        return g;
    }
    if !Path::new(spec).exists() {
        return Err(format!("{spec}: no such file and not a graph spec"));
    }
    Graph::parse_edge_list(&read_file(spec)?).map_err(|e| format!("{spec}: {e}"))
}

/// The built-in balanced labeling for specs that have one.
pub fn builtin_balanced(spec: &str) -> CliResult<Labeling> {
    let bad = || format!("{spec}: no built-in balanced labeling; pass one with --h-labeling");
    let (head, rest) = spec.split_once(':').ok_or_else(bad)?;
    let built = match head {
        "cycle" if number(spec, rest)? == 4 => Ok(label_c4()),
        "empty" => {
            let n = number(spec, rest)?;
            if n % 2 == 1 {
                return Err(bad());
            }
            Ok(Labeling::identity(n))
        }
        "kbip" => {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            let (a, b) = (number(spec, a)?, number(spec, b)?);
            if a != b || a == 0 || a % 2 != 0 {
                return Err(bad());
            }
            label_complete_bipartite(a / 2)
        }
        "kminusm" => {
            let n = number(spec, rest)?;
            if n % 2 != 0 || n == 0 {
                return Err(bad());
            }
            label_complete_minus_matching(n / 2)
        }
        _ => return Err(bad()),
    };
    built.map_err(|e| format!("{spec}: {e}"))
}
