//! Built-in catalog of classical skew PBW extensions.
//!
//! Every entry ships as DSL source with its parameter instantiation
//! documented inline, so `pbwforge catalog <name>` prints something that can
//! be fed back through the parser unchanged. The `sigma_filtered` flag
//! records the expected verdict of the σ-filtered check for the entry.

use crate::dsl::{self, PresentationFile};
use crate::Error;

/// One shipped presentation.
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Expected verdict of the σ-filtered check.
    pub sigma_filtered: bool,
    pub source: &'static str,
}

const WEYL_1: &str = "\
# first Weyl algebra: x t = t x + 1 over K[t]
ring kt
gens t

extension weyl-1 over kt
vars x
delta 1: t -> 1
";

const WEYL_2: &str = "\
# second Weyl algebra over K[t1, t2]: x_i t_j = t_j x_i + kronecker(i, j)
ring kt2
gens t1 t2
rel t2*t1 -> t1*t2

extension weyl-2 over kt2
vars x1 x2
delta 1: t1 -> 1; t2 -> 0
delta 2: t1 -> 0; t2 -> 1
cross 2 1: d = 1
";

const JORDAN_EXT: &str = "\
# extension of the Jordan plane: x1 t1 = t1 x1, x1 t2 = (t2 + 2 t1) x1
ring jordan
gens t1 t2
rel t2*t1 -> t1*t2 + t1^2

extension jordan-ext over jordan
vars x1
sigma 1: t1 -> t1; t2 -> 2*t1 + t2
sigma_inv 1: t1 -> t1; t2 -> t2 - 2*t1
delta 1: t1 -> 0; t2 -> 0
";

const KT_GENERAL: &str = "\
# general Ore extension of K[t]: x t = c1 t x + c2 x + c3 t^2 + c4 t + c5
# instantiated with (c1, c2, c3, c4, c5) = (2, 1, 1, 1, 1); c1 != 0 makes
# sigma an automorphism with inverse t -> (t - c2)/c1
ring kt
gens t
param c1 = 2
param c2 = 1
param c3 = 1
param c4 = 1
param c5 = 1

extension kt-general over kt
vars x
sigma 1: t -> c1*t + c2
sigma_inv 1: t -> 1/2*t - 1/2
delta 1: t -> c3*t^2 + c4*t + c5
";

const USL2: &str = "\
# universal enveloping algebra of sl2: [e, f] = h, [h, e] = 2e, [h, f] = -2f
ring K

extension usl2 over K
vars e f h
cross 2 1: d = 1, r3 = -1
cross 3 1: d = 1, r1 = 2
cross 3 2: d = 1, r2 = -2
";

const TYPE_I: &str = "\
# 3-dimensional skew polynomial algebra of Type I:
#   y z = alpha z y,  z x = beta x z + a y + b,  x y = alpha y x
# instantiated with alpha = 2, beta = 3, a = 1, b = 1 (alpha*beta != 0)
ring K
param alpha = 2
param beta = 3
param a = 1
param b = 1

extension type-I over K
vars x y z
cross 2 1: d = 1/2
cross 3 1: d = beta, r0 = b, r2 = a
cross 3 2: d = 1/2
";

const TYPE_II: &str = "\
# 3-dimensional skew polynomial algebra of Type II:
#   y z = alpha z y + x + b1,  z x = alpha x z + y + b2,  x y = alpha y x + z + b3
# instantiated with alpha = 2, b1 = b2 = b3 = 1
ring K
param alpha = 2
param b1 = 1
param b2 = 1
param b3 = 1

extension type-II over K
vars x y z
cross 2 1: d = 1/2, r0 = -1/2, r3 = -1/2
cross 3 1: d = 2, r0 = b2, r2 = 1
cross 3 2: d = 1/2, r0 = -1/2, r1 = -1/2
";

const QUANTUM_PLANE: &str = "\
# quantum plane K<x,y>/(x y - q y x) with q = 1/2
ring K
param q = 1/2

extension quantum-plane over K
vars x y
cross 2 1: d = 2
";

const QUANTUM_WEYL: &str = "\
# quantum Weyl algebra K<x,y>/(x y - q y x + 1) with q = 1/2
ring K
param q = 1/2

extension quantum-weyl over K
vars x y
cross 2 1: d = 2, r0 = 2
";

const DEFORM_LINEAR: &str = "\
# K<x,y>/(y x - x y + y): a linear PBW deformation of the plane
ring K

extension deform-linear over K
vars x y
cross 2 1: d = 1, r2 = -1
";

const DEFORM_JORDAN: &str = "\
# K<x,y>/(y x - x y + y^2) viewed over K[y]: x y = y x + y^2
ring ky
gens y

extension deform-jordan over ky
vars x
delta 1: y -> y^2
";

const DEFORM_JORDAN_UNIT: &str = "\
# K<x,y>/(y x - x y + y^2 + 1) viewed over K[y]: x y = y x + y^2 + 1
ring ky
gens y

extension deform-jordan-unit over ky
vars x
delta 1: y -> y^2 + 1
";

const NON_FILTERED: &str = "\
# K<x,y>/(y x - x y - x^3) over K[x]: delta(x) = x^3 has degree 3, so the
# derivation is not filtered and the extension is not sigma-filtered
ring kx
gens x

extension non-filtered over kx
vars y
delta 1: x -> x^3
";

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "weyl-1",
        summary: "first Weyl algebra over K[t]",
        sigma_filtered: true,
        source: WEYL_1,
    },
    CatalogEntry {
        name: "weyl-2",
        summary: "second Weyl algebra over K[t1, t2]",
        sigma_filtered: true,
        source: WEYL_2,
    },
    CatalogEntry {
        name: "jordan-ext",
        summary: "extension of the Jordan plane",
        sigma_filtered: true,
        source: JORDAN_EXT,
    },
    CatalogEntry {
        name: "kt-general",
        summary: "general Ore extension of K[t], (c1..c5) = (2, 1, 1, 1, 1)",
        sigma_filtered: true,
        source: KT_GENERAL,
    },
    CatalogEntry {
        name: "usl2",
        summary: "universal enveloping algebra of sl2",
        sigma_filtered: true,
        source: USL2,
    },
    CatalogEntry {
        name: "type-I",
        summary: "Type I skew polynomial algebra, alpha = 2, beta = 3, a = b = 1",
        sigma_filtered: true,
        source: TYPE_I,
    },
    CatalogEntry {
        name: "type-II",
        summary: "Type II skew polynomial algebra, alpha = 2, b1 = b2 = b3 = 1",
        sigma_filtered: true,
        source: TYPE_II,
    },
    CatalogEntry {
        name: "quantum-plane",
        summary: "quantum plane, q = 1/2",
        sigma_filtered: true,
        source: QUANTUM_PLANE,
    },
    CatalogEntry {
        name: "quantum-weyl",
        summary: "quantum Weyl algebra, q = 1/2",
        sigma_filtered: true,
        source: QUANTUM_WEYL,
    },
    CatalogEntry {
        name: "deform-linear",
        summary: "dimension-two PBW deformation y x = x y - y",
        sigma_filtered: true,
        source: DEFORM_LINEAR,
    },
    CatalogEntry {
        name: "deform-jordan",
        summary: "dimension-two PBW deformation x y = y x + y^2 over K[y]",
        sigma_filtered: true,
        source: DEFORM_JORDAN,
    },
    CatalogEntry {
        name: "deform-jordan-unit",
        summary: "dimension-two PBW deformation x y = y x + y^2 + 1 over K[y]",
        sigma_filtered: true,
        source: DEFORM_JORDAN_UNIT,
    },
    CatalogEntry {
        name: "non-filtered",
        summary: "y x = x y + x^3 over K[x]; delta is not filtered",
        sigma_filtered: false,
        source: NON_FILTERED,
    },
];

/// Every shipped entry, in catalog order.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Case-insensitive lookup.
pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    let wanted = name.to_ascii_lowercase();
    ENTRIES
        .iter()
        .find(|e| e.name.to_ascii_lowercase() == wanted)
}

/// Parses and builds a shipped entry.
pub fn load(name: &str) -> Result<PresentationFile, Error> {
    let entry = find(name).ok_or_else(|| Error::UnknownEntry {
        name: name.to_string(),
        available: ENTRIES
            .iter()
            .map(|e| e.name)
            .collect::<Vec<_>>()
            .join(", "),
    })?;
    dsl::parse_or_error(entry.source)
}
