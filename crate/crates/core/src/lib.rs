//! Hecke algebras built by the residue method.

pub mod algebra;
pub mod demazure;
pub mod error;
pub mod laurent;
pub mod membership;
pub mod presentations;
pub mod rootdata;
pub mod sampling;
pub mod suites;
pub mod elliptic;
pub mod io;

macro_rules! book_chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        )*
    };
}

book_chapters! {
    book_introduction => "introduction.md",
    book_root_data => "root-data.md",
    book_laurent => "laurent.md",
    book_twisted_algebra => "twisted-algebra.md",
    book_membership => "membership.md",
    book_demazure_lusztig => "demazure-lusztig.md",
    book_presentations => "presentations.md",
    book_elliptic => "elliptic.md",
    book_cli => "cli.md",
}
