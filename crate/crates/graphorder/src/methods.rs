//! Named orderings with their parameters.

use std::fmt;
use std::str::FromStr;

use graphorder_core::orderings::{self, NdParams, SlashburnParams};
use graphorder_core::spectral::fiedler_vector;
use graphorder_core::vifps::vifps;
use graphorder_core::{Graph, ParetoParams, Permutation, SolverConfig, SpectralError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Identity,
    Random,
    Rcm,
    Amd,
    Slashburn,
    Nd,
    /// Vertices by Fiedler value (`fcut1`).
    Fiedler,
    Vifps,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Identity,
        Method::Random,
        Method::Rcm,
        Method::Amd,
        Method::Slashburn,
        Method::Nd,
        Method::Fiedler,
        Method::Vifps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Identity => "identity",
            Method::Random => "random",
            Method::Rcm => "rcm",
            Method::Amd => "amd",
            Method::Slashburn => "slashburn",
            Method::Nd => "nd",
            Method::Fiedler => "fcut1",
            Method::Vifps => "vifps",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fiedler" | "fcut1" => Ok(Method::Fiedler),
            "slash" | "slashburn" => Ok(Method::Slashburn),
            other => Method::ALL
                .into_iter()
                .find(|m| m.name() == other)
                .ok_or_else(|| {
                    let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                    format!("unknown method {s:?}; expected one of {}", names.join(", "))
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MethodParams {
    pub slashburn: SlashburnParams,
    pub nd: NdParams,
    pub pareto: ParetoParams,
    pub fiedler: SolverConfig,
    /// Seed of the `random` ordering.
    pub seed: u64,
}

/// An ordering and whether every eigensolve behind it converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Ordered {
    pub perm: Permutation,
    pub converged: bool,
}

pub fn order(g: &Graph, method: Method, params: &MethodParams) -> Result<Ordered, SpectralError> {
    let perm = match method {
        Method::Identity => orderings::identity_order(g),
        Method::Random => Permutation::random(g.n(), params.seed),
        Method::Rcm => orderings::rcm(g),
        Method::Amd => orderings::amd(g),
        Method::Slashburn => orderings::slashburn(g, &params.slashburn),
        Method::Nd => orderings::nested_dissection(g, &params.nd),
        Method::Vifps => vifps(g, &params.pareto),
        Method::Fiedler => return fiedler_by_component(g, &params.fiedler),
    };
    Ok(Ordered {
        perm,
        converged: true,
    })
}

/// Fiedler order of each component, largest first; isolated vertices last.
fn fiedler_by_component(g: &Graph, cfg: &SolverConfig) -> Result<Ordered, SpectralError> {
    let g = g.undirected();
    let mut order = Vec::with_capacity(g.n());
    let mut isolated = Vec::new();
    let mut converged = true;
    for members in g.connected_components().members() {
        if members.len() == 1 {
            isolated.push(members[0]);
            continue;
        }
        let (sub, _) = g
            .induced_subgraph(&members)
            .expect("component members are distinct");
        let r = fiedler_vector(&sub, cfg)?;
        converged &= r.converged;
        let values = r.vertex_values(&sub);
        let mut local: Vec<usize> = (0..sub.n()).collect();
        local.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        order.extend(local.into_iter().map(|v| members[v]));
    }
    isolated.sort_unstable();
    order.extend(isolated);
    Ok(Ordered {
        perm: Permutation::from_order(order).expect("components partition the vertices"),
        converged,
    })
}
