"""A setuptools based setup module for d2k."""

from io import open
from os import path

from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# Single-source the version from the package without importing it
about = {}
with open(path.join(here, 'd2k', '__init__.py'), encoding='utf-8') as f:
    for line in f:
        if line.startswith('__version__'):
            exec(line, about)
            break

setup(
    name='d2k',  # Required
    version=about['__version__'],  # Required
    description='Approximate word-match statistics D2(k) between random DNA sequences.',  # Optional
    long_description=long_description,  # Optional
    long_description_content_type='text/markdown',  # Optional

    classifiers=[  # Optional
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Bio-Informatics',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],

    keywords='alignment-free sequence comparison D2 statistic k-mer mismatch central limit theorem',  # Optional

    packages=find_packages(exclude=['contrib', 'docs', 'tests']),  # Required
    python_requires='>=3.8',

    install_requires=[
        'numpy>=1.20',
        'scipy>=1.6',
        'numba>=0.53',
    ],

    extras_require={  # Optional
        'dev': ['check-manifest'],
        'test': ['pytest', 'coverage'],
    },

    entry_points={  # Optional
        'console_scripts': [
            'd2k=d2k.cli:main',
        ],
    },
)
