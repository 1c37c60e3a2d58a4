import os

"""
Qubit ordering convention. Qubit 0 is the most significant bit of a basis state index:
the bitstring "1100" is the basis state of index 12.
"""
BIG_ENDIAN = True

"""
Tolerance on the squared norm of a statevector after any gate application
"""
NORM_TOLERANCE = 1e-10

"""
Largest number of qubits for which dense matrices (exact diagonalization, full unitaries) are built
"""
MAX_DENSE_QUBITS = 12

"""
Step of the central finite differences used as a gradient oracle
"""
FINITE_DIFFERENCE_EPS = 1e-5

"""
Hyper-parameters of the classical optimizer of each local node.
Learning rate 0.01, momentum 0.9 and a decay of 0.1 every 40 global rounds.
"""
LEARNING_RATE = 0.01
MOMENTUM = 0.9
DECAY_FACTOR = 0.1
DECAY_PERIOD = 40

"""
Default number of measurements per expectation estimate
"""
SHOTS = 100

"""
Image classification workload: 6 qubits (64 amplitudes for 8x8 images), 4 blocks of the hardware-efficient ansatz.
The observable is the projector |0><0| on the last qubit.
"""
QNN_N_QUBITS = 6
QNN_N_BLOCKS = 4
QNN_TRAIN_COUNT = 256
QNN_TEST_COUNT = 500
QNN_GLOBAL_STEPS = 120

"""
Ground state workload: the 4-qubit H2 Hamiltonian, evaluated on a bond distance grid (Angstrom).
The reference state is |1100>.
VQE learning rate and number of rounds are not given by the experiments and are chosen so that W=1 converges.
The initial parameters of the VQE are drawn in [0, VQE_INIT_RANGE)^d instead of [0, 2π)^d, so that every run starts close to
the reference state, away from the stationary basis states of the ansatz.
"""
VQE_REFERENCE_STATE = "1100"
VQE_INIT_RANGE = 0.2
VQE_BOND_DISTANCES = (0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9, 2.1)
VQE_LEARNING_RATE = 0.4
VQE_DECAY_FACTOR = 1.0
VQE_GLOBAL_STEPS = 300

"""
Location of the MNIST files. When the --dataset-dir flag is absent, the QUDIO_DATA environment variable is used.
"""
DATA_ENV_VAR = "QUDIO_DATA"
MNIST_URL = "https://storage.googleapis.com/cvdf-datasets/mnist/"
MNIST_FILES = {
    "train_images" : "train-images-idx3-ubyte",
    "train_labels" : "train-labels-idx1-ubyte",
    "test_images"  : "t10k-images-idx3-ubyte",
    "test_labels"  : "t10k-labels-idx1-ubyte",
}

"""
Number of standard errors allowed by the Monte Carlo checks
"""
STDERR_GATE = 4.

"""
Default energy gap to the exact ground energy (Hartree) under which a VQE run is considered converged by the benchmark
"""
CHEMICAL_ACCURACY = 1.6e-3

"""
Default accuracy threshold of the image classification benchmark
"""
QNN_ACCURACY_THRESHOLD = 0.95

"""
H2 Hamiltonian files shipped with the package, one `h2_<d>A.txt` file per distance of VQE_BOND_DISTANCES.
Used when no --hamiltonian-dir is given.
"""
H2_DATA_DIR = os.path.join(os.path.dirname(__file__), "data", "hamiltonians")
