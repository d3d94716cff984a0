//! The co-prime order graph: vertices are group elements, `x ~ y` iff
//! `gcd(o(x), o(y))` is 1 or a prime.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::ExactMatrix;

/// Adjacency predicate on element orders.
pub fn adjacent(order_u: u64, order_v: u64) -> bool {
    let g = gcd(order_u, order_v);
    g == 1 || is_prime(g)
}

/// Symmetric bit matrix, one packed row of `u64` words per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            words: vec![0; n * words_per_row],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices of the set bits in row `i`, ascending.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }
}

fn set_range(row: &mut [u64], start: usize, end: usize) {
    for j in start..end {
        row[j / 64] |= 1 << (j % 64);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub element: GroupElement,
    pub order: u64,
}

/// Co-prime order graph of a group, vertices in canonical order
/// (identity first, then by order and element encoding).
#[derive(Debug, Clone)]
pub struct CoprimeOrderGraph {
    pub spec: GroupSpec,
    pub vertices: Vec<Vertex>,
    pub adjacency: BitMatrix,
    pub degrees: Vec<usize>,
}

/// Builds the graph, filling whole order-class blocks at a time since
/// adjacency depends only on the two orders.
pub fn build_graph(spec: &GroupSpec, cap: usize) -> Result<CoprimeOrderGraph> {
    let vertices: Vec<Vertex> = spec
        .elements_with_orders(cap)?
        .into_iter()
        .map(|(element, order)| Vertex { element, order })
        .collect();
    let n = vertices.len();

    // contiguous runs of equal order: (order, start, end)
    let mut classes: Vec<(u64, usize, usize)> = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        match classes.last_mut() {
            Some((o, _, end)) if *o == v.order => *end = i + 1,
            _ => classes.push((v.order, i, i + 1)),
        }
    }
    let class_of: Vec<usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, &(_, s, e))| std::iter::repeat_n(c, e - s))
        .collect();
    let class_adj: Vec<Vec<bool>> = classes
        .iter()
        .map(|&(a, _, _)| classes.iter().map(|&(b, _, _)| adjacent(a, b)).collect())
        .collect();

    let mut adjacency = BitMatrix::new(n);
    let wpr = adjacency.words_per_row;
    if wpr > 0 {
        adjacency.words.par_chunks_mut(wpr).enumerate().for_each(|(i, row)| {
            let ci = class_of[i];
            for (cj, &(_, s, e)) in classes.iter().enumerate() {
                if class_adj[ci][cj] {
                    set_range(row, s, e);
                }
            }
            row[i / 64] &= !(1 << (i % 64));
        });
    }
    let degrees = (0..n).map(|i| adjacency.row_count(i)).collect();

    Ok(CoprimeOrderGraph {
        spec: spec.clone(),
        vertices,
        adjacency,
        degrees,
    })
}

impl CoprimeOrderGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Degree of vertex `i` recounted from its adjacency row.
    pub fn brute_degree(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return Err(Error::VertexOutOfRange {
                index: i,
                size: self.len(),
            });
        }
        Ok(self.adjacency.row_count(i))
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.adjacency.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// `D - A`.
    pub fn laplacian(&self) -> ExactMatrix {
        let n = self.len();
        let mut entries = vec![0i64; n * n];
        entries.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
            for j in self.adjacency.neighbors(i) {
                row[j] = -1;
            }
            row[i] = self.degrees[i] as i64;
        });
        ExactMatrix::from_vec(n, entries).expect("laplacian of a non-empty graph")
    }

    /// Distinct vertex orders with their vertex index ranges, ascending.
    pub fn order_classes(&self) -> Vec<(u64, std::ops::Range<usize>)> {
        let mut out: Vec<(u64, std::ops::Range<usize>)> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            match out.last_mut() {
                Some((o, r)) if *o == v.order => r.end = i + 1,
                _ => out.push((v.order, i..i + 1)),
            }
        }
        out
    }

    pub fn export(&self, format: ExportFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            ExportFormat::Dot => self.write_dot(out),
            ExportFormat::Csv => self.write_csv(out),
            ExportFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json_document(None))?;
                writeln!(out)
            }
        }
    }

    fn write_dot(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "graph \"{}\" {{", self.spec)?;
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  {i} [label=\"{}/{}\"];", v.element, v.order)?;
        }
        for (i, j) in self.edges() {
            writeln!(out, "  {i} -- {j};")?;
        }
        writeln!(out, "}}")
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "source,target")?;
        for (i, j) in self.edges() {
            writeln!(out, "{i},{j}")?;
        }
        Ok(())
    }

    /// JSON export document; `spectrum` is attached by callers that have one.
    pub fn json_document(&self, spectrum: Option<SpectrumSummary>) -> GraphDocument {
        GraphDocument {
            group: self.spec.to_string(),
            order: self.len(),
            vertices: self
                .vertices
                .iter()
                .zip(&self.degrees)
                .map(|(v, &degree)| JsonVertex {
                    element: v.element.to_string(),
                    order: v.order,
                    degree,
                })
                .collect(),
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
            spectrum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonVertex {
    pub element: String,
    pub order: u64,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    /// `[eigenvalue, multiplicity]` pairs, eigenvalues descending.
    pub closed_form: Vec<[u64; 2]>,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDocument {
    pub group: String,
    pub order: usize,
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn graph(spec: GroupSpec) -> CoprimeOrderGraph {
        build_graph(&spec, DEFAULT_CAP).unwrap()
    }

    fn export_string(g: &CoprimeOrderGraph, format: ExportFormat) -> String {
        let mut buf = Vec::new();
        g.export(format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn adjacency_predicate() {
        assert!(adjacent(1, 12));
        assert!(adjacent(4, 6));
        assert!(!adjacent(6, 6));
        assert!(!adjacent(4, 4));
        assert!(adjacent(2, 2));
        assert!(adjacent(9, 3));
        assert!(!adjacent(9, 9));
    }

    #[test]
    fn klein_four_is_complete() {
        let g = graph(GroupSpec::Abelian(vec![2, 2]));
        assert_eq!(g.degrees, vec![3; 4]);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn z4_z2_degrees() {
        let g = graph(GroupSpec::Abelian(vec![4, 2]));
        assert_eq!(g.degrees, vec![7, 7, 7, 7, 4, 4, 4, 4]);
        assert_eq!(g.brute_degree(0).unwrap(), 7);
        assert_eq!(g.brute_degree(5).unwrap(), 4);
        assert_eq!(g.vertices[5].order, 4);
        assert_eq!(g.brute_degree(8), Err(Error::VertexOutOfRange { index: 8, size: 8 }));
    }

    #[test]
    fn d3_is_k6() {
        let g = graph(GroupSpec::Dihedral(3));
        assert_eq!(g.degrees, vec![5; 6]);
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn laplacian_shape() {
        let g = graph(GroupSpec::Abelian(vec![2]));
        assert_eq!(g.laplacian().to_rows(), vec![vec![1, -1], vec![-1, 1]]);

        let g = graph(GroupSpec::Abelian(vec![2, 2]));
        let l = g.laplacian();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l.get(i, j), if i == j { 3 } else { -1 });
            }
        }

        let l = graph(GroupSpec::Abelian(vec![4, 2])).laplacian();
        assert_eq!(l.trace(), 44);
        assert!(l.is_symmetric());
        assert!((0..8).all(|i| l.row(i).iter().sum::<i64>() == 0));
    }

    #[test]
    fn csv_export() {
        let k2 = graph(GroupSpec::Abelian(vec![2]));
        assert_eq!(export_string(&k2, ExportFormat::Csv), "source,target\n0,1\n");
        let csv = export_string(&graph(GroupSpec::Abelian(vec![4, 2])), ExportFormat::Csv);
        assert_eq!(csv.lines().count() - 1, 22);
    }

    #[test]
    fn dot_export() {
        let dot = export_string(&graph(GroupSpec::Dihedral(3)), ExportFormat::Dot);
        assert_eq!(dot.matches(" -- ").count(), 15);
        assert!(dot.starts_with("graph \"D3\" {\n  0 [label=\"e/1\"];\n  1 [label=\"f/2\"];"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn json_export() {
        let json = export_string(&graph(GroupSpec::Dihedral(3)), ExportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["group"], "D3");
        assert_eq!(v["order"], 6);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 15);
        assert_eq!(v["vertices"][0]["element"], "e");
        assert_eq!(v["vertices"][0]["degree"], 5);
        assert!(v.get("spectrum").is_none());
    }

    #[test]
    fn order_classes_are_contiguous() {
        let g = graph(GroupSpec::Dihedral(6));
        let classes: Vec<(u64, usize)> = g.order_classes().into_iter().map(|(o, r)| (o, r.len())).collect();
        assert_eq!(classes, vec![(1, 1), (2, 7), (3, 2), (6, 2)]);
    }
}
