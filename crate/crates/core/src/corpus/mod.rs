//! Built-in group families, the module-action builder, group files and the
//! standard test corpus.

mod examples;
mod families;
mod groupfile;
mod module_action;

pub use examples::{example1_inner, example2, example2_quotient, Ex2Coords};
pub use families::{
    alternating, dihedral, elementary_abelian, frobenius, generalized_quaternion, matrix_group,
    q8_plane, quaternion_matrices, s3_plane, sl2_3, sylow2_sym8, symmetric, FamilySpec,
};
pub use groupfile::{
    format_group, parse_group, read_group_file, write_atomic, write_group_file,
    TABLE_WRITE_LIMIT,
};
pub use module_action::{
    build_module_action, is_irreducible, semidirect_with_module, spin, ModuleDescription,
    BRUTE_COMMUTANT_LIMIT,
};

use crate::error::Result;
use crate::group::FiniteGroup;

/// Family strings of the standard corpus.
pub const CORPUS: &[&str] = &[
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(10)",
    "cyclic(11)",
    "cyclic(12)",
    "cyclic(16)",
    "cyclic(30)",
    "cyclic(60)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(7)",
    "dihedral(8)",
    "dihedral(9)",
    "dihedral(10)",
    "dihedral(11)",
    "dihedral(12)",
    "dihedral(16)",
    "generalized_quaternion(8)",
    "generalized_quaternion(16)",
    "generalized_quaternion(32)",
    "symmetric(3)",
    "symmetric(4)",
    "symmetric(5)",
    "alternating(4)",
    "alternating(5)",
    "alternating(6)",
    "elementary_abelian(2,2)",
    "elementary_abelian(2,3)",
    "elementary_abelian(2,4)",
    "elementary_abelian(3,2)",
    "elementary_abelian(3,3)",
    "elementary_abelian(5,2)",
    "sylow2_sym8",
    "frobenius(7,3)",
    "frobenius(5,4)",
    "frobenius(7,6)",
    "frobenius(13,3)",
    "frobenius(11,5)",
    "sl2_3",
    "q8_plane(3)",
    "s3_plane(5)",
    "example2_quotient",
    "product(cyclic(2),symmetric(3))",
    "product(cyclic(3),symmetric(3))",
    "product(symmetric(3),symmetric(3))",
    "product(generalized_quaternion(8),cyclic(3))",
    "product(cyclic(8),cyclic(8))",
    "product(alternating(4),cyclic(5))",
    "product(cyclic(2),alternating(4))",
    "product(generalized_quaternion(8),cyclic(2))",
    "product(dihedral(4),cyclic(3))",
    "product(cyclic(2),cyclic(6))",
    "product(cyclic(4),cyclic(4))",
    "product(sl2_3,cyclic(5))",
    "product(cyclic(2),symmetric(4))",
    "product(frobenius(7,3),cyclic(2))",
    "product(dihedral(5),cyclic(3))",
    "product(cyclic(3),alternating(5))",
];

/// Families accepted by `FamilySpec::parse`, for listings.
pub const FAMILIES: &[&str] = &[
    "cyclic(n)",
    "dihedral(n)            order 2n",
    "generalized_quaternion(2^k)",
    "symmetric(n)           n <= 6",
    "alternating(n)         n <= 6",
    "elementary_abelian(p,k)",
    "sylow2_sym8",
    "example1_inner(p)      p odd prime",
    "example2",
    "frobenius(p,q)         q | p-1",
    "sl2_3",
    "q8_plane(p)            p odd prime",
    "s3_plane(p)            p prime, p != 3",
    "example2_quotient",
    "product(F1,F2)",
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
}

/// The standard corpus restricted to groups of order at most `max_order`.
pub fn builtin_corpus(max_order: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for name in CORPUS {
        let spec = FamilySpec::parse(name)?;
        if spec.expected_order() > max_order {
            continue;
        }
        out.push(CorpusEntry {
            name: name.to_string(),
            group: spec.construct()?,
        });
    }
    Ok(out)
}
