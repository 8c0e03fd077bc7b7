-- Dependent composition instantiated at constant Nat families.
def compose :
  (A : Type 0) -> (B : (x : A) -> Type 0) -> (C : (x : A) -> (y : B x) -> Type 0) ->
  ((y : A) -> (z : B y) -> C y z) -> (g : (x : A) -> B x) -> (x : A) -> C x (g x)
  :=
  fun (A : Type 0) =>
  fun (B : (x : A) -> Type 0) =>
  fun (C : (x : A) -> (y : B x) -> Type 0) =>
  fun (f : (y : A) -> (z : B y) -> C y z) =>
  fun (g : (x : A) -> B x) =>
  fun (x : A) => f x (g x);
compose Nat (fun (x : Nat) => Nat) (fun (x : Nat) => fun (y : Nat) => Nat)
  (fun (y : Nat) => fun (z : Nat) => add y z) (fun (x : Nat) => add 1 x) 3
