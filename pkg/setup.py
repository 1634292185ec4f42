"""The setup script."""
from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('requirements.txt') as requirements_file:
    reqs = [line.strip() for line in requirements_file
            if line.strip() and not line.startswith('#')]

setup(
    name='cubewalk',
    python_requires='>=3.8',
    version='0.1',
    description="Exact coined quantum walks and gate level walk circuits on cubelike graphs",
    long_description=readme,
    long_description_content_type="text/x-rst",
    packages=find_packages(include=['cubewalk', 'cubewalk.*']),
    include_package_data=True,
    install_requires=reqs,
    license="MIT license",
    zip_safe=False,
    keywords='quantum walk, cubelike graph, hypercube, hitting time, qasm',
    entry_points={
        'console_scripts': [
            'cubewalk = cubewalk.cli:run',
        ]
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
