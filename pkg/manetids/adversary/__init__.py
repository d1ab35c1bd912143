from manetids.adversary.blackhole import AttackerProfile, BlackholeAgent
