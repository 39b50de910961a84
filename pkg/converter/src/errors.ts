export class UnsupportedLayout extends Error {
    readonly offendingPath: string;

    constructor(offendingPath: string, detail: string) {
        super(`${offendingPath}: ${detail}`);
        this.name = 'UnsupportedLayout';
        this.offendingPath = offendingPath;
    }
}
