"""A full CBKAP exchange, and what travels on the wire."""
from cbkap import codec
from cbkap.protocol import ParamsConfig, keygen, public_key, shared_secret, ttp_setup

params = ttp_setup(ParamsConfig(n=8, p=251, seed=42))
print("beta =", params.beta, " (pure word over Bob's letters)")
print("A generators:", [str(w) for w in params.a_generators])
print("B generators:", [str(w) for w in params.b_generators])

alice = keygen(params, "alice", seed=1)
bob = keygen(params, "bob", seed=2)
pa, pb = public_key(params, alice), public_key(params, bob)

sa = shared_secret(params, alice, pb)
sb = shared_secret(params, bob, pa)
print("secrets agree:", sa == sb)
print("secret permutation:", sa.state.perm)

blob = codec.serialize(pb)
print(f"Bob's public key is {len(blob)} bytes:", blob.hex()[:48], "...")
print("params hash:", codec.params_hash(params).hex())
