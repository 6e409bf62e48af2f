//! Plain-text serialization for certificates and trees, and DOT export
//! for visualization. The formats are line oriented; '#' starts a
//! comment line.

use std::fmt::Write as _;

use super::{AsdimCertificate, DecompError, DecompTree, LeafCert, MemberSplit, Piece};

impl AsdimCertificate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "asdim-certificate");
        let _ = writeln!(out, "scale {}", self.scale);
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "bound {}", self.bound);
        let _ = writeln!(out, "members {}", self.covers.len());
        for (m, cover) in self.covers.iter().enumerate() {
            let _ = writeln!(out, "member {m}");
            for piece in cover {
                let pts: Vec<String> = piece.points.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(out, "piece {} : {}", piece.color, pts.join(" "));
            }
        }
        let _ = writeln!(out, "end");
        out
    }

    pub fn from_text(text: &str) -> Result<AsdimCertificate, DecompError> {
        let mut lines = Lines::new(text);
        lines.expect("asdim-certificate")?;
        let scale = lines.keyed_u64("scale")?;
        let n = lines.keyed_u64("n")? as usize;
        let bound = lines.keyed_u64("bound")?;
        let members = lines.keyed_u64("members")? as usize;
        let mut covers: Vec<Vec<Piece>> = Vec::with_capacity(members);
        for m in 0..members {
            let header = lines.next_or("member header")?;
            if header.1 != format!("member {m}") {
                return Err(DecompError::Parse {
                    line: header.0,
                    msg: format!("expected 'member {m}', got {:?}", header.1),
                });
            }
            let mut cover = Vec::new();
            while let Some((no, line)) = lines.peek() {
                if !line.starts_with("piece ") {
                    break;
                }
                let body = &line["piece ".len()..];
                let (color_part, pts_part) = body.split_once(':').ok_or(DecompError::Parse {
                    line: no,
                    msg: "piece line needs 'piece <color> : <points>'".into(),
                })?;
                let color: usize =
                    color_part.trim().parse().map_err(|_| DecompError::Parse {
                        line: no,
                        msg: format!("bad color {:?}", color_part.trim()),
                    })?;
                let points = parse_points(pts_part, no)?;
                cover.push(Piece { color, points });
                lines.advance();
            }
            covers.push(cover);
        }
        lines.expect("end")?;
        Ok(AsdimCertificate {
            n,
            scale,
            bound,
            covers,
        })
    }
}

impl DecompTree {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "decomp-tree");
        write_tree(self, &mut out);
        let _ = writeln!(out, "end");
        out
    }

    pub fn from_text(text: &str) -> Result<DecompTree, DecompError> {
        let mut lines = Lines::new(text);
        lines.expect("decomp-tree")?;
        let tree = parse_tree(&mut lines)?;
        lines.expect("end")?;
        Ok(tree)
    }
}

fn write_tree(tree: &DecompTree, out: &mut String) {
    match tree {
        DecompTree::Leaf(LeafCert::Bounded { bound }) => {
            let _ = writeln!(out, "leaf bounded {bound}");
        }
        DecompTree::Leaf(LeafCert::SemiBounded { bound }) => {
            let _ = writeln!(out, "leaf semibounded {bound}");
        }
        DecompTree::Node {
            scale,
            splits,
            u_child,
            v_child,
        } => {
            let _ = writeln!(out, "node scale {scale} members {}", splits.len());
            for (m, split) in splits.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "split {m} u {} v {}",
                    split.u_pieces.len(),
                    split.v_pieces.len()
                );
                for piece in &split.u_pieces {
                    let pts: Vec<String> = piece.iter().map(|p| p.to_string()).collect();
                    let _ = writeln!(out, "upiece {}", pts.join(" "));
                }
                for piece in &split.v_pieces {
                    let pts: Vec<String> = piece.iter().map(|p| p.to_string()).collect();
                    let _ = writeln!(out, "vpiece {}", pts.join(" "));
                }
            }
            let _ = writeln!(out, "uchild");
            write_tree(u_child, out);
            let _ = writeln!(out, "vchild");
            write_tree(v_child, out);
            let _ = writeln!(out, "endnode");
        }
    }
}

fn parse_tree(lines: &mut Lines) -> Result<DecompTree, DecompError> {
    let (no, line) = lines.next_or("tree node")?;
    if let Some(rest) = line.strip_prefix("leaf bounded ") {
        let bound = rest.trim().parse().map_err(|_| DecompError::Parse {
            line: no,
            msg: format!("bad bound {rest:?}"),
        })?;
        return Ok(DecompTree::Leaf(LeafCert::Bounded { bound }));
    }
    if let Some(rest) = line.strip_prefix("leaf semibounded ") {
        let bound = rest.trim().parse().map_err(|_| DecompError::Parse {
            line: no,
            msg: format!("bad bound {rest:?}"),
        })?;
        return Ok(DecompTree::Leaf(LeafCert::SemiBounded { bound }));
    }
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "node" || toks[1] != "scale" || toks[3] != "members" {
        return Err(DecompError::Parse {
            line: no,
            msg: format!("expected 'node scale <r> members <k>' or a leaf, got {line:?}"),
        });
    }
    let scale: u64 = toks[2].parse().map_err(|_| DecompError::Parse {
        line: no,
        msg: format!("bad scale {:?}", toks[2]),
    })?;
    let members: usize = toks[4].parse().map_err(|_| DecompError::Parse {
        line: no,
        msg: format!("bad member count {:?}", toks[4]),
    })?;
    let mut splits = Vec::with_capacity(members);
    for m in 0..members {
        let (no, line) = lines.next_or("split header")?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "split" || toks[2] != "u" || toks[4] != "v" {
            return Err(DecompError::Parse {
                line: no,
                msg: format!("expected 'split {m} u <k> v <l>', got {line:?}"),
            });
        }
        let u_count: usize = toks[3].parse().map_err(|_| DecompError::Parse {
            line: no,
            msg: "bad u piece count".into(),
        })?;
        let v_count: usize = toks[5].parse().map_err(|_| DecompError::Parse {
            line: no,
            msg: "bad v piece count".into(),
        })?;
        let mut u_pieces = Vec::with_capacity(u_count);
        for _ in 0..u_count {
            let (no, line) = lines.next_or("upiece")?;
            let rest = line.strip_prefix("upiece").ok_or(DecompError::Parse {
                line: no,
                msg: format!("expected 'upiece ...', got {line:?}"),
            })?;
            u_pieces.push(parse_points(rest, no)?);
        }
        let mut v_pieces = Vec::with_capacity(v_count);
        for _ in 0..v_count {
            let (no, line) = lines.next_or("vpiece")?;
            let rest = line.strip_prefix("vpiece").ok_or(DecompError::Parse {
                line: no,
                msg: format!("expected 'vpiece ...', got {line:?}"),
            })?;
            v_pieces.push(parse_points(rest, no)?);
        }
        splits.push(MemberSplit { u_pieces, v_pieces });
    }
    lines.expect("uchild")?;
    let u_child = parse_tree(lines)?;
    lines.expect("vchild")?;
    let v_child = parse_tree(lines)?;
    lines.expect("endnode")?;
    Ok(DecompTree::Node {
        scale,
        splits,
        u_child: Box::new(u_child),
        v_child: Box::new(v_child),
    })
}

fn parse_points(s: &str, line: usize) -> Result<Vec<usize>, DecompError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| DecompError::Parse {
                line,
                msg: format!("bad point id {tok:?}"),
            })
        })
        .collect()
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn next_or(&mut self, what: &str) -> Result<(usize, &'a str), DecompError> {
        let item = self.items.get(self.pos).copied().ok_or(DecompError::Parse {
            line: self.items.last().map(|&(n, _)| n).unwrap_or(0),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn expect(&mut self, token: &str) -> Result<(), DecompError> {
        let (no, line) = self.next_or(token)?;
        if line != token {
            return Err(DecompError::Parse {
                line: no,
                msg: format!("expected {token:?}, got {line:?}"),
            });
        }
        Ok(())
    }

    fn keyed_u64(&mut self, key: &str) -> Result<u64, DecompError> {
        let (no, line) = self.next_or(key)?;
        let rest = line.strip_prefix(key).ok_or(DecompError::Parse {
            line: no,
            msg: format!("expected '{key} <value>', got {line:?}"),
        })?;
        rest.trim().parse().map_err(|_| DecompError::Parse {
            line: no,
            msg: format!("bad value for {key}: {rest:?}"),
        })
    }
}

/// DOT digraph of a decomposition tree for external rendering.
pub fn tree_to_dot(tree: &DecompTree, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    let mut counter = 0usize;
    dot_rec(tree, &mut out, &mut counter);
    let _ = writeln!(out, "}}");
    out
}

fn dot_rec(tree: &DecompTree, out: &mut String, counter: &mut usize) -> usize {
    let id = *counter;
    *counter += 1;
    match tree {
        DecompTree::Leaf(LeafCert::Bounded { bound }) => {
            let _ = writeln!(out, "  n{id} [label=\"bounded\\ndiam <= {bound}\"];");
        }
        DecompTree::Leaf(LeafCert::SemiBounded { bound }) => {
            let _ = writeln!(out, "  n{id} [label=\"semi-bounded\\nfinite d < {bound}\"];");
        }
        DecompTree::Node {
            scale,
            splits,
            u_child,
            v_child,
        } => {
            let u_total: usize = splits.iter().map(|s| s.u_pieces.len()).sum();
            let v_total: usize = splits.iter().map(|s| s.v_pieces.len()).sum();
            let _ = writeln!(
                out,
                "  n{id} [label=\"r = {scale}\\n{} member(s)\\nU: {u_total} piece(s), V: {v_total} piece(s)\"];",
                splits.len()
            );
            let u_id = dot_rec(u_child, out, counter);
            let _ = writeln!(out, "  n{id} -> n{u_id} [label=\"U\"];");
            let v_id = dot_rec(v_child, out, counter);
            let _ = writeln!(out, "  n{id} -> n{v_id} [label=\"V\"];");
        }
    }
    id
}
