//! Text formats for graphs, automorphisms and extensions, and the named
//! presets accepted wherever a file path is.
//!
//! ```text
//! # comment
//! vertex a Z
//! vertex s Z2
//! edge a s
//! letterorder a a' s
//! map a a'
//! torder 2
//! ```
//!
//! A graph file uses `vertex`, `edge` and `letterorder`; an automorphism file
//! uses `map` lines, with omitted vertices fixed. An extension file is both
//! plus a `torder` line.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use raag_conj_core::automorphism::{examples as auts, make_generator, AutError};
use raag_conj_core::graph::{examples as graphs, GraphError};
use raag_conj_core::word::{parse_word, tokenize, WordParseError};
use raag_conj_core::{Automorphism, DefiningGraph, Generator, Letter, Vertex, VertexKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordParseError),
    #[error("automorphism rejected: {0}")]
    Automorphism(#[from] AutError),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    Conflict(String),
}

/// Contents of an input file. Every section is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputFile {
    pub vertices: Vec<(String, VertexKind)>,
    pub edges: Vec<(String, String)>,
    pub letter_order: Option<String>,
    pub maps: Vec<(String, String)>,
    pub torder: Option<usize>,
}

impl InputFile {
    pub fn has_graph(&self) -> bool {
        !self.vertices.is_empty()
    }

    pub fn graph(&self) -> Result<DefiningGraph, LoadError> {
        let g = DefiningGraph::new(&self.vertices, &self.edges)?;
        match &self.letter_order {
            Some(spec) => apply_letter_order(&g, spec),
            None => Ok(g),
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputFile, LoadError> {
    let mut out = InputFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| LoadError::Syntax { line: i + 1, msg: msg.to_string() };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let args: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "vertex" => {
                let kind = match args.get(1).copied() {
                    None | Some("Z") => VertexKind::InfiniteCyclic,
                    Some("Z2") => VertexKind::OrderTwo,
                    Some(_) => return Err(err("vertex kind must be Z or Z2")),
                };
                if args.is_empty() || args.len() > 2 {
                    return Err(err("expected `vertex <name> [Z|Z2]`"));
                }
                out.vertices.push((args[0].to_string(), kind));
            }
            "edge" => {
                let [u, v] = args[..] else { return Err(err("expected `edge <u> <v>`")) };
                out.edges.push((u.to_string(), v.to_string()));
            }
            "letterorder" => {
                if out.letter_order.replace(rest.to_string()).is_some() {
                    return Err(err("letterorder given twice"));
                }
            }
            "map" => {
                let Some((v, w)) = rest.split_once(char::is_whitespace) else {
                    return Err(err("expected `map <vertex> <word>`"));
                };
                out.maps.push((v.to_string(), w.trim().to_string()));
            }
            "torder" => {
                let [m] = args[..] else { return Err(err("expected `torder <m>`")) };
                let m: usize = m.parse().map_err(|_| err("t-order must be a positive integer"))?;
                if m == 0 {
                    return Err(err("t-order must be a positive integer"));
                }
                if out.torder.replace(m).is_some() {
                    return Err(err("torder given twice"));
                }
            }
            _ => return Err(err(&format!("unknown directive `{key}`"))),
        }
    }
    Ok(out)
}

pub fn read_input(path: &Path) -> Result<InputFile, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_input(&text)
}

/// Builds the automorphism given by `map` lines; unlisted vertices are fixed.
pub fn automorphism_from_maps(g: &Arc<DefiningGraph>, maps: &[(String, String)]) -> Result<Automorphism, LoadError> {
    let mut images = Vec::with_capacity(maps.len());
    for (v, w) in maps {
        let vx = g.vertex(v).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
        if images.iter().any(|(u, _): &(Vertex, Vec<Letter>)| *u == vx) {
            return Err(LoadError::Conflict(format!("vertex `{v}` mapped twice")));
        }
        images.push((vx, parse_word(g, w)?.into_letters()));
    }
    Ok(Automorphism::from_images(g.clone(), &images)?)
}

/// Reorders the letters of `g`.
///
/// Either a vertex list (`a c b d`, each vertex followed by its inverse) or,
/// when any inverse marker appears, a complete letter list (`a c c' a' ...`).
pub fn apply_letter_order(g: &DefiningGraph, spec: &str) -> Result<DefiningGraph, LoadError> {
    let tokens = tokenize(spec)?;
    let mut order = Vec::with_capacity(tokens.len());
    for t in &tokens {
        if t.exponent.abs() != 1 {
            return Err(LoadError::Conflict(format!("letter order entry `{}` has an exponent", t.name)));
        }
        let v = g.vertex(&t.name).ok_or_else(|| GraphError::UnknownVertex(t.name.clone()))?;
        order.push((v, t.marked_inverse));
    }
    if tokens.iter().any(|t| t.marked_inverse) {
        Ok(g.with_letter_order(&order)?)
    } else {
        let vs: Vec<Vertex> = order.into_iter().map(|(v, _)| v).collect();
        Ok(g.with_vertex_order(&vs)?)
    }
}

/// Moves `f` onto a copy of its graph with a different letter order.
pub fn transport(f: &Automorphism, g: &Arc<DefiningGraph>) -> Result<Automorphism, LoadError> {
    let old = f.graph();
    if old.names() != g.names() {
        return Err(LoadError::Conflict("automorphism and graph have different vertices".into()));
    }
    let images: Vec<(Vertex, Vec<Letter>)> = (0..g.rank())
        .map(|v| {
            let w = f.image(v).iter().map(|&l| g.letter(old.letter_vertex(l), old.is_inverted(l))).collect();
            (v, w)
        })
        .collect();
    Ok(Automorphism::from_images(g.clone(), &images)?)
}

pub const GRAPH_PRESETS: &[&str] = &["square", "path4", "f2xz", "edgeless", "free2"];
pub const PSI_PRESETS: &[&str] = &["rot", "refl", "linerefl", "trv", "pc", "inva", "inv:<vertex>", "id"];

pub fn graph_preset(name: &str) -> Option<DefiningGraph> {
    Some(match name {
        "square" | "G1" => graphs::square(),
        "path4" | "G2" => graphs::path4(),
        "f2xz" | "G3" => graphs::f2_times_z(),
        "edgeless" => graphs::edgeless_xy(),
        "free2" => graphs::free2(),
        _ => return None,
    })
}

/// A ψ preset that carries its own graph.
fn fixed_psi_preset(name: &str) -> Option<Automorphism> {
    Some(match name {
        "rot" => auts::rot(),
        "refl" => auts::refl(),
        "linerefl" => auts::line_refl(),
        "trv" => auts::trv(),
        "pc" => auts::pc(),
        "inva" => auts::invert_a(),
        _ => return None,
    })
}

/// Where a graph or automorphism comes from: a preset name or a file.
fn is_file(arg: &str) -> bool {
    Path::new(arg).is_file()
}

/// A graph, an optional automorphism and an optional t-order, resolved from
/// command-line style arguments.
#[derive(Clone, Debug)]
pub struct Session {
    pub graph: Arc<DefiningGraph>,
    pub psi: Option<Automorphism>,
    pub torder: Option<usize>,
}

/// Resolves `--graph`, `--auto`/`--psi`, `--letterorder` and `--torder`.
///
/// A ψ preset implies its graph when no graph is given; with neither, the
/// square is used.
pub fn load_session(
    graph: Option<&str>,
    psi: Option<&str>,
    letter_order: Option<&str>,
    torder: Option<usize>,
) -> Result<Session, LoadError> {
    let mut file_torder = None;
    let mut file_maps: Option<Vec<(String, String)>> = None;
    let mut file_letter_order: Option<String> = None;
    let base: Option<DefiningGraph> = match graph {
        Some(arg) if is_file(arg) => {
            let spec = read_input(Path::new(arg))?;
            file_torder = spec.torder;
            if !spec.maps.is_empty() {
                file_maps = Some(spec.maps.clone());
            }
            file_letter_order = spec.letter_order.clone();
            if !spec.has_graph() {
                return Err(LoadError::Conflict(format!("{arg}: no vertices")));
            }
            Some(DefiningGraph::new(&spec.vertices, &spec.edges)?)
        }
        Some(arg) => Some(graph_preset(arg).ok_or_else(|| LoadError::UnknownPreset(arg.to_string()))?),
        None => None,
    };

    // The automorphism in terms of its own graph's default letter order.
    let mut psi_maps: Option<Vec<(String, String)>> = file_maps;
    let mut preset: Option<Automorphism> = None;
    let mut generator: Option<String> = None;
    match psi {
        Some(arg) if is_file(arg) => {
            let spec = read_input(Path::new(arg))?;
            if spec.has_graph() {
                return Err(LoadError::Conflict(format!("{arg}: automorphism files hold only map/torder lines")));
            }
            file_torder = file_torder.or(spec.torder);
            psi_maps = Some(spec.maps);
        }
        Some("id") => psi_maps = Some(Vec::new()),
        Some(arg) if arg.starts_with("inv:") => generator = Some(arg[4..].to_string()),
        Some(arg) => {
            preset = Some(fixed_psi_preset(arg).ok_or_else(|| LoadError::UnknownPreset(arg.to_string()))?);
        }
        None => {}
    }

    let base = match (base, &preset) {
        (Some(g), Some(p)) => {
            let pg = p.graph();
            if g.names() != pg.names() || g.edges() != pg.edges() || (0..g.rank()).any(|v| g.kind(v) != pg.kind(v)) {
                return Err(LoadError::Conflict("automorphism preset does not fit the given graph".into()));
            }
            g
        }
        (Some(g), None) => g,
        (None, Some(p)) => (**p.graph()).clone(),
        (None, None) => graphs::square(),
    };
    let order = letter_order.map(str::to_string).or(file_letter_order);
    let g = Arc::new(match &order {
        Some(spec) => apply_letter_order(&base, spec)?,
        None => base,
    });
    let psi = if let Some(p) = preset {
        Some(transport(&p, &g)?)
    } else if let Some(maps) = psi_maps {
        Some(automorphism_from_maps(&g, &maps)?)
    } else if let Some(v) = generator {
        let vx = g.vertex(&v).ok_or(GraphError::UnknownVertex(v))?;
        Some(make_generator(g.clone(), &Generator::Inversion(vx))?)
    } else {
        None
    };
    if let (Some(a), Some(b)) = (torder, file_torder) {
        if a != b {
            return Err(LoadError::Conflict(format!("--torder {a} disagrees with file torder {b}")));
        }
    }
    Ok(Session { graph: g, psi, torder: torder.or(file_torder) })
}
