-- An open arithmetic normal form.
axiom n : Nat;
add 1 (add 1 n)
