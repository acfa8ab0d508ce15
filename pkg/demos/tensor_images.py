# Generator images on the tensor space, and the relations they satisfy.
from symblob.laurent import render, var
from symblob.relations import enumerate_relations, verify_all
from symblob.roperators import build_r, gen_image, generators, ij_words, theta_target
from symblob.tensor import BasisWord, TensorVector, apply

n = 2

# An R-operator only touches two neighbouring letters and kills equal pairs.
R = build_r(n, -1, var("x"))
for letters in [(1, 1, 2, 1, 1, 2, 2, 1), (1, 1, 1, 2, 1, 2, 2, 1), (1, 1, 2, 2, 1, 2, 2, 1)]:
    w = BasisWord.from_letters(letters)
    print(w, "->", apply(R, TensorVector.basis(n, w)))

# Each generator is a product of R's at distinct positions; columns stay small.
for g in generators(n):
    op = gen_image(n, g)
    print(f"{g:>3}: {len(op.nonzero_columns())} nonzero columns, "
          f"at most {op.max_column_size()} terms per column")

I, J = ij_words(n)
print("I =", I, " J =", J)

# the scalars the relations need
for name, val in theta_target(n).as_dict().items():
    text = render(val)
    print(f"{name:>3} = {text if len(text) < 70 else text[:67] + '...'}")

rep = verify_all(n)
for r in rep.results:
    print("PASS" if r.passed else "FAIL", r.relation)

# Break K and watch the two relations that use it fail.
bad = verify_all(n, theta_target(n).perturbed("K"))
print("with K+1, failing:", bad.failed_ids())

print(len(enumerate_relations(3)), "relations at n=3:",
      "all pass" if verify_all(3).passed else "FAILURES")
