import setuptools

with open("README.md", "r") as file_handle:
    long_description = file_handle.read()

setuptools.setup(
    name="qudio",
    version='0.1.0',
    description="Distributed optimization of variational quantum algorithms",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    package_data={"qudio" : ["data/hamiltonians/*.txt"]},
    python_requires=">=3.9",
    install_requires=[
        "aenum",
        'numpy',
        'scipy',
        'tqdm',
    ],
    entry_points={"console_scripts" : ["qudio = qudio.cli.main:main"]},
)
