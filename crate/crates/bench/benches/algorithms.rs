use criterion::{black_box, criterion_group, criterion_main, Criterion};

use edim2_core::edim::{essential_dimension, EdBudget};
use edim2_core::gl2z::{classify, GroupLabel};
use edim2_core::group::library::{c7_c3, psl27, symmetric};
use edim2_core::group::subgroups::solvable_subgroups;
use edim2_core::monomial::{cox_extension, fixed_points, splits};
use edim2_core::reptheory::character_table;
use edim2_core::toric::StandardSurface;
use edim2_core::verify::torsion_extension;
use edim2_core::versality::versal_monomial;

fn gl2z(c: &mut Criterion) {
    let g = GroupLabel::G1.representative();
    c.bench_function("classify D12", |b| {
        b.iter(|| classify(black_box(&g)).unwrap())
    });
}

fn monomial(c: &mut Criterion) {
    let g = torsion_extension(GroupLabel::G1, 6, StandardSurface::DP6);
    c.bench_function("fixed points T[6]:G1", |b| {
        b.iter(|| fixed_points(black_box(&g)))
    });
    c.bench_function("splitting T[6]:G1", |b| {
        b.iter(|| splits(&cox_extension(black_box(&g)).unwrap()))
    });
    c.bench_function("versal T[6]:G1", |b| {
        b.iter(|| versal_monomial(black_box(&g)))
    });
    let fam = torsion_extension(GroupLabel::G9, 9, StandardSurface::P2);
    c.bench_function("subgroups T[9]:G9", |b| {
        b.iter(|| solvable_subgroups(black_box(fam.group())))
    });
}

fn characters(c: &mut Criterion) {
    let g = psl27();
    c.bench_function("character table PSL2(F7)", |b| {
        b.iter(|| character_table(black_box(&g)).unwrap())
    });
}

fn edim(c: &mut Criterion) {
    let budget = EdBudget::default();
    let mut group = c.benchmark_group("essential dimension");
    group.sample_size(10);
    for (name, g) in [
        ("S4", symmetric(4)),
        ("S5", symmetric(5)),
        ("C7:C3", c7_c3()),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| essential_dimension(black_box(&g), &budget))
        });
    }
    group.finish();
}

criterion_group!(benches, gl2z, monomial, characters, edim);
criterion_main!(benches);
