"""Walk through the three worked fixtures.

    python3 demos/counterexamples.py
"""

from rank2curv.classify import ip_class, is_ip_by_sampling, rank_profile, survey_rank
from rank2curv.curvature import make_R_phi
from rank2curv.errors import DegenerateLine, DomainTooSmall
from rank2curv.exactlin import basis_vector, intersect, range_of
from rank2curv.fixtures import fixture, planes_8_2, timelike_planes_8_3
from rank2curv.reconstruct import decompose, phi_line


def volume_form():
    T = fixture("8.1").payload
    s = survey_rank(T, 2000, seed=0)
    print(f"8.1  rank over 2000 spacelike planes: {sorted(set(s.ranks))}")
    f = [basis_vector(4, i) for i in range(4)]
    cap = intersect(intersect(range_of(T(f[0], f[1])), range_of(T(f[0], f[2]))),
                    range_of(T(f[0], f[3])))
    print(f"     dim Range T(f1,f2) ∩ Range T(f1,f3) ∩ Range T(f1,f4) = {cap.dim}")
    try:
        phi_line(T, f[0], [f[1], f[2]])
    except DegenerateLine as exc:
        print(f"     phi_line: DegenerateLine ({exc})")
    try:
        decompose(T)
    except DomainTooSmall as exc:
        print(f"     decompose: DomainTooSmall ({exc})")


def not_ip(p=4):
    phi = fixture("8.2", p=p).payload
    pl = planes_8_2(p)
    v = is_ip_by_sampling(make_R_phi(phi), 100, forced_planes=[pl[2], pl[p + 1]])
    (_, a), (_, b) = v.witness
    print(f"8.2  ip_class: {ip_class(phi).tag.value}; Jordan types on pi_2, pi_{p + 1}: {a}, {b}")


def isotropic(p=6):
    phi = fixture("8.3", p=p).payload
    R = make_R_phi(phi)
    v = is_ip_by_sampling(R, 100)
    prof = rank_profile(R, timelike_planes_8_3(p).values())
    print(f"8.3  ip_class: {ip_class(phi).tag.value}; sampled type {v.jordan} on {v.samples} planes")
    print(f"     ranks on timelike planes pi_2^- .. pi_{p}^-: {prof}")


if __name__ == "__main__":
    volume_form()
    not_ip()
    isotropic()
